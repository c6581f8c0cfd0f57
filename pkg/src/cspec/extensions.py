"""Subalgebra extensions A <= B: contraction, Gamma, rigidity and the r / r* families."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Iterable

from .algebra import AlgebraError, FiniteAlgebra, induced_subalgebra, subalgebra_generate
from .commutator import HypothesisError, commutator_table, hypothesis_flags, perp_table
from .partitions import Congruence, cg
from .spectra import is_semiprime, spectrum_indices, stone_topology


class Extension:
    """B together with a subuniverse; A is rebuilt on 0..m-1 with an inclusion map."""

    def __init__(self, big: FiniteAlgebra, sub: Iterable[int]):
        sub = frozenset(int(x) for x in sub)
        if not sub:
            raise AlgebraError("the subalgebra must be nonempty")
        if subalgebra_generate(big, sub) != sub:
            raise AlgebraError(f"{sorted(sub)} is not closed under the operations of {big.name}")
        self.big = big
        self.sub = tuple(sorted(sub))
        self.induced, self.inclusion = induced_subalgebra(big, sub, name=f"{big.name}{{{','.join(map(str, self.sub))}}}")

    def __repr__(self):
        return f"Extension({self.big.name}, sub={list(self.sub)})"

    @cached_property
    def ct_a(self):
        return commutator_table(self.induced)

    @cached_property
    def ct_b(self):
        return commutator_table(self.big)

    @property
    def lat_a(self):
        return self.ct_a.lattice

    @property
    def lat_b(self):
        return self.ct_b.lattice

    @cached_property
    def contraction(self) -> tuple[int, ...]:
        """Index in Con(A) of the contraction of every congruence of B."""
        return tuple(self.lat_a.idx(self._contract(c)) for c in self.lat_b)

    @cached_property
    def extension_map(self) -> tuple[int, ...]:
        """Index in Con(B) of Cg_B(alpha) for every alpha in Con(A)."""
        inc = self.inclusion
        return tuple(
            self.lat_b.idx(cg(self.big, [(inc[a], inc[b]) for a, b in alpha.pairs()])) for alpha in self.lat_a
        )

    def _contract(self, beta: Congruence) -> Congruence:
        inc = self.inclusion
        m = len(inc)
        return Congruence.from_pairs(m, [(i, j) for i in range(m) for j in range(i) if beta.related(inc[i], inc[j])])


def make_extension(big: FiniteAlgebra, sub: Iterable[int]) -> Extension:
    return Extension(big, sub)


def contract(ext: Extension, beta: Congruence) -> Congruence:
    return ext.lat_a[ext.contraction[ext.lat_b.idx(beta)]]


def extend(ext: Extension, alpha: Congruence) -> Congruence:
    """Cg_B of a congruence of A."""
    return ext.lat_b[ext.extension_map[ext.lat_a.idx(alpha)]]


def is_admissible(ext: Extension) -> bool:
    spec_a = set(spectrum_indices(ext.induced).spec)
    return all(ext.contraction[p] in spec_a for p in spectrum_indices(ext.big).spec)


def is_m_extension(ext: Extension) -> bool:
    min_a = set(spectrum_indices(ext.induced).min)
    return all(ext.contraction[mu] in min_a for mu in spectrum_indices(ext.big).min)


# --- Gamma -----------------------------------------------------------------


@dataclass(frozen=True)
class GammaAnalysis:
    gamma: dict[Congruence, Congruence]
    total: bool  # every minimal prime of B contracts into Min(A)
    surjective: bool | None
    injective: bool | None
    continuous: bool | None
    open: bool | None
    homeomorphism: bool | None


def gamma_analysis(ext: Extension) -> GammaAnalysis:
    """Gamma(mu) = mu & Nabla_A on Min(B).

    On a non-m-extension the partial map is returned and every verdict is None.
    """
    si_a, si_b = spectrum_indices(ext.induced), spectrum_indices(ext.big)
    min_a = list(si_a.min)
    pos_a = {p: k for k, p in enumerate(min_a)}
    gamma_idx = {mu: ext.contraction[mu] for mu in si_b.min if ext.contraction[mu] in pos_a}
    gamma = {ext.lat_b[mu]: ext.lat_a[v] for mu, v in gamma_idx.items()}
    if len(gamma_idx) != len(si_b.min):
        return GammaAnalysis(gamma, False, None, None, None, None, None)
    top_a = stone_topology(ext.induced, "min")
    top_b = stone_topology(ext.big, "min")
    # point positions in the two Min topologies
    f = [pos_a[gamma_idx[mu]] for mu in si_b.min]
    surjective = set(f) == set(range(len(min_a)))
    injective = len(set(f)) == len(f)

    def preimage(u):
        return frozenset(k for k, v in enumerate(f) if v in u)

    def image(u):
        return frozenset(f[k] for k in u)

    continuous = all(top_b.is_open(preimage(u)) for u in set(top_a.basis.values()))
    is_open = all(top_a.is_open(image(u)) for u in top_b.opens)
    return GammaAnalysis(
        gamma, True, surjective, injective, continuous, is_open, continuous and is_open and surjective and injective
    )


# --- rigidity and the r / r* families ---------------------------------------


RANGES = ("rigid", "quasi", "weak")
_KIND_ALIASES = {"quasirigid": "quasi", "weak_rigid": "weak", "r": "rigid", "quasi_r": "quasi", "weak_r": "weak"}


def _alpha_range(ext: Extension, kind: str) -> list[int]:
    lat = ext.lat_a
    kind = _KIND_ALIASES.get(kind, kind)
    if kind == "rigid":
        return list(lat.principal)
    if kind in ("quasi", "weak"):
        return list(range(len(lat)))  # K(A) = Con(A) for finite A
    raise ValueError(f"kind must be one of {RANGES}, got {kind!r}")


def _perp_b_required(ext: Extension) -> tuple[int, ...]:
    perps = perp_table(ext.big)
    if any(p is None for p in perps):
        raise HypothesisError(f"{ext.big.name}: some annihilator has no maximum")
    return perps


def _alpha_perp_b(ext: Extension, a: int) -> int:
    return _perp_b_required(ext)[ext.extension_map[a]]


def rigidity_check(ext: Extension, kind: str = "rigid") -> bool:
    """Every principal beta of B has an alpha in the range with alpha^perpB = beta^perpB."""
    perps = _perp_b_required(ext)
    targets = {_alpha_perp_b(ext, a) for a in _alpha_range(ext, kind)}
    return all(perps[b] in targets for b in ext.lat_b.principal)


def r_family_check(ext: Extension, kind: str = "rigid", star: bool = False) -> bool:
    """r-type (star=False) or r*-type (star=True) property for the given alpha range.

    r:  for mu in Min(B), principal beta not below mu, some alpha not below mu has beta^perpB <= alpha^perpB.
    r*: for mu in Min(B), principal beta below mu, some alpha below mu has alpha^perpB <= beta^perpB.
    """
    perps = _perp_b_required(ext)
    leq_b = ext.lat_b.leq
    alphas = _alpha_range(ext, kind)
    ext_map = ext.extension_map
    for mu in spectrum_indices(ext.big).min:
        for b in ext.lat_b.principal:
            if leq_b[b, mu] == star:
                ok = False
                for a in alphas:
                    inside = leq_b[ext_map[a], mu]  # alpha <= mu iff Cg_B(alpha) <= mu
                    pa = perps[ext_map[a]]
                    if star and inside and leq_b[pa, perps[b]]:
                        ok = True
                    elif not star and not inside and leq_b[perps[b], pa]:
                        ok = True
                    if ok:
                        break
                if not ok:
                    return False
    return True


# --- report and theorem suite ------------------------------------------------


class Status(str, Enum):
    PASS = "PASS"
    SKIPPED = "SKIPPED"
    VIOLATION = "VIOLATION"


@dataclass(frozen=True)
class Verdict:
    statement: str
    status: Status
    detail: str = ""


@dataclass(frozen=True)
class ExtensionReport:
    admissible: bool
    m_extension: bool
    gamma: dict
    gamma_surjective: bool | None
    gamma_injective: bool | None
    gamma_continuous: bool | None
    gamma_homeomorphism: bool | None
    rigid: bool | None
    quasirigid: bool | None
    weak_rigid: bool | None
    r: bool | None
    quasi_r: bool | None
    weak_r: bool | None
    r_star: bool | None
    quasi_r_star: bool | None
    weak_r_star: bool | None
    semiprime_A: bool
    semiprime_B: bool
    verdicts: tuple[Verdict, ...] = field(default=())


def _maybe(fn: Callable[[], bool]) -> bool | None:
    try:
        return fn()
    except HypothesisError:
        return None


def extension_report(ext: Extension, with_theorems: bool = True) -> ExtensionReport:
    g = gamma_analysis(ext)
    return ExtensionReport(
        admissible=is_admissible(ext),
        m_extension=is_m_extension(ext),
        gamma=g.gamma,
        gamma_surjective=g.surjective,
        gamma_injective=g.injective,
        gamma_continuous=g.continuous,
        gamma_homeomorphism=g.homeomorphism,
        rigid=_maybe(lambda: rigidity_check(ext, "rigid")),
        quasirigid=_maybe(lambda: rigidity_check(ext, "quasi")),
        weak_rigid=_maybe(lambda: rigidity_check(ext, "weak")),
        r=_maybe(lambda: r_family_check(ext, "rigid")),
        quasi_r=_maybe(lambda: r_family_check(ext, "quasi")),
        weak_r=_maybe(lambda: r_family_check(ext, "weak")),
        r_star=_maybe(lambda: r_family_check(ext, "rigid", star=True)),
        quasi_r_star=_maybe(lambda: r_family_check(ext, "quasi", star=True)),
        weak_r_star=_maybe(lambda: r_family_check(ext, "weak", star=True)),
        semiprime_A=is_semiprime(ext.induced),
        semiprime_B=is_semiprime(ext.big),
        verdicts=tuple(theorem_suite(ext)) if with_theorems else (),
    )


def _standing_hypotheses(ext: Extension) -> list[str]:
    failing = []
    for label, alg in (("A", ext.induced), ("B", ext.big)):
        flags = hypothesis_flags(alg)
        if not is_semiprime(alg):
            failing.append(f"semiprime_{label}")
        if not flags.commutative:
            failing.append(f"commutative_{label}")
        if not flags.join_distributive:
            failing.append(f"join_distributive_{label}")
    return failing


def theorem_suite(ext: Extension) -> list[Verdict]:
    """Evaluate the extension statements on this instance.

    Every statement is gated on semiprimeness of A and B and on their
    commutators being commutative and join-distributive, plus its own
    premises (admissible, m-extension, ...). Failed gates give SKIPPED naming
    the first failing hypothesis; failed conclusions give VIOLATION.
    """
    names = [s for s, _ in _STATEMENTS]
    standing = _standing_hypotheses(ext)
    if standing:
        return [Verdict(s, Status.SKIPPED, standing[0]) for s in names]
    ctx = _SuiteContext(ext)
    out = []
    for statement, check in _STATEMENTS:
        premise, outcome = check(ctx)
        if premise is not None:
            out.append(Verdict(statement, Status.SKIPPED, premise))
        elif outcome:
            out.append(Verdict(statement, Status.VIOLATION, outcome))
        else:
            out.append(Verdict(statement, Status.PASS))
    return out


class _SuiteContext:
    def __init__(self, ext: Extension):
        self.ext = ext
        self.lat_a, self.lat_b = ext.lat_a, ext.lat_b
        self.si_a, self.si_b = spectrum_indices(ext.induced), spectrum_indices(ext.big)
        self.perp_a = perp_table(ext.induced)
        self.perp_b = perp_table(ext.big)
        self.admissible = is_admissible(ext)
        self.m_extension = is_m_extension(ext)

    @cached_property
    def gamma(self) -> GammaAnalysis:
        return gamma_analysis(self.ext)

    @cached_property
    def families(self) -> dict[str, bool]:
        ext = self.ext
        out = {}
        for kind in RANGES:
            out[f"{kind}_rigid"] = rigidity_check(ext, kind)
            out[f"{kind}_r"] = r_family_check(ext, kind)
            out[f"{kind}_r_star"] = r_family_check(ext, kind, star=True)
        return out


def _need_admissible(ctx):
    return None if ctx.admissible else "admissible=false"


def _need_m(ctx):
    return None if ctx.m_extension else "m_extension=false"


def _check_mext_perp_criterion(ctx):
    if (p := _need_admissible(ctx)) is not None:
        return p, None
    la, lb, ext = ctx.lat_a, ctx.lat_b, ctx.ext
    # alpha <= mu  iff  Cg_B(alpha) <= mu
    cond2 = cond3 = True
    for a in range(len(la)):
        pa = ctx.perp_a[a]
        for mu in ctx.si_b.min:
            inside = lb.leq[ext.extension_map[a], mu]
            perp_inside = lb.leq[ext.extension_map[pa], mu]
            if inside and perp_inside:
                cond2 = False
            if inside == (not perp_inside):
                continue
            cond3 = False
    if not (ctx.m_extension == cond2 == cond3):
        return None, f"m_extension={ctx.m_extension}, perp criterion={cond2}, iff form={cond3}"
    return None, ""


def _check_primes_lie_over_min(ctx):
    if (p := _need_admissible(ctx)) is not None:
        return p, None
    la = ctx.lat_a
    for psi in ctx.si_a.spec:
        if not any(la.leq[ctx.ext.contraction[mu], psi] for mu in ctx.si_b.min):
            return None, f"no minimal prime of B contracts below {la[psi]}"
    return None, ""


def _check_gamma_surjective(ctx):
    if (p := _need_admissible(ctx)) is not None:
        return p, None
    hit = {ctx.ext.contraction[mu] for mu in ctx.si_b.min}
    missing = [ctx.lat_a[psi] for psi in ctx.si_a.min if psi not in hit]
    return None, f"minimal primes of A not hit: {missing}" if missing else ""


def _check_commutator_vanishing_transfer(ctx):
    if (p := _need_m(ctx)) is not None:
        return p, None
    ta, tb = ctx.ext.ct_a.table, ctx.ext.ct_b.table
    em = ctx.ext.extension_map
    for t in range(len(ctx.lat_a)):
        for z in range(len(ctx.lat_a)):
            if (ta[t, z] == 0) != (tb[em[t], em[z]] == 0):
                return None, f"[{ctx.lat_a[t]}, {ctx.lat_a[z]}]"
    return None, ""


def _check_perp_restriction(ctx):
    if (p := _need_m(ctx)) is not None:
        return p, None
    ext = ctx.ext
    for t in range(len(ctx.lat_a)):
        if ctx.perp_a[t] != ext.contraction[ctx.perp_b[ext.extension_map[t]]]:
            return None, f"perp_A({ctx.lat_a[t]}) != perp_B & Nabla_A"
    return None, ""


def _check_perp_generation(ctx):
    if (p := _need_m(ctx)) is not None:
        return p, None
    ext = ctx.ext
    for t in range(len(ctx.lat_a)):
        pb = ctx.perp_b[ext.extension_map[t]]
        if ext.extension_map[ctx.perp_a[t]] != pb:
            return None, f"perp_B({ctx.lat_a[t]}) = {ctx.lat_b[pb]} but Cg_B(perp_A) = {ctx.lat_b[ext.extension_map[ctx.perp_a[t]]]}"
    return None, ""


def _check_perp_equality_transfer(ctx):
    if (p := _need_m(ctx)) is not None:
        return p, None
    em = ctx.ext.extension_map
    n = len(ctx.lat_a)
    for t in range(n):
        for z in range(n):
            same_a = ctx.perp_a[t] == ctx.perp_a[z]
            same_b = ctx.perp_b[em[t]] == ctx.perp_b[em[z]]
            if same_a != same_b:
                return None, f"{ctx.lat_a[t]}, {ctx.lat_a[z]}"
    return None, ""


def _check_rigid_implies_r(ctx):
    if (p := _need_m(ctx)) is not None:
        return p, None
    fam = ctx.families
    bad = [k for k in RANGES if fam[f"{k}_rigid"] and not (fam[f"{k}_r"] and fam[f"{k}_r_star"])]
    return None, f"{bad} rigid without r/r*" if bad else ""


def _check_gamma_continuous(ctx):
    if (p := _need_m(ctx)) is not None:
        return p, None
    g = ctx.gamma
    return None, "" if g.continuous else "Gamma not continuous"


def _check_injective_gamma(ctx):
    if (p := _need_m(ctx)) is not None:
        return p, None
    g = ctx.gamma
    if not g.injective:
        return "gamma_injective=false", None
    bad = []
    if not g.homeomorphism:
        bad.append("not a homeomorphism")
    if not ctx.families["weak_rigid"]:
        bad.append("not weak rigid")
    return None, "; ".join(bad)


def _upgrade(star: bool):
    def check(ctx):
        if (p := _need_admissible(ctx)) is not None:
            return p, None
        fam = ctx.families
        suffix = "_r_star" if star else "_r"
        if not fam["weak" + suffix]:
            return f"weak{suffix}=false", None
        bad = []
        if not ctx.m_extension:
            bad.append("not an m-extension")
        if not fam["rigid" + suffix]:
            bad.append(f"not {suffix[1:]}")
        if ctx.m_extension and not ctx.gamma.homeomorphism:
            bad.append("Gamma not a homeomorphism")
        return None, "; ".join(bad)

    return check


def _check_weak_families_weak_rigid(ctx):
    if (p := _need_admissible(ctx)) is not None:
        return p, None
    fam = ctx.families
    if not (fam["weak_r"] or fam["weak_r_star"]):
        return "weak_r=false and weak_r_star=false", None
    return None, "" if fam["weak_rigid"] else "weak r/r* without weak rigidity"


def _check_admissible_equivalences(ctx):
    if (p := _need_admissible(ctx)) is not None:
        return p, None
    fam = ctx.families
    values = {k: fam[k] for k in ("weak_rigid", "weak_r", "weak_r_star", "rigid_r", "rigid_r_star")}
    return None, "" if len(set(values.values())) == 1 else f"{values}"


_STATEMENTS = [
    ("m_extension_perp_criterion", _check_mext_perp_criterion),
    ("primes_lie_over_minimal_primes", _check_primes_lie_over_min),
    ("gamma_surjective", _check_gamma_surjective),
    ("commutator_vanishing_transfer", _check_commutator_vanishing_transfer),
    ("perp_restriction", _check_perp_restriction),
    ("perp_generation", _check_perp_generation),
    ("perp_equality_transfer", _check_perp_equality_transfer),
    ("rigid_implies_r_and_r_star", _check_rigid_implies_r),
    ("gamma_continuous", _check_gamma_continuous),
    ("injective_gamma_homeomorphism_weak_rigid", _check_injective_gamma),
    ("weak_r_upgrade", _upgrade(False)),
    ("weak_r_star_upgrade", _upgrade(True)),
    ("weak_r_families_imply_weak_rigid", _check_weak_families_weak_rigid),
    ("admissible_equivalences", _check_admissible_equivalences),
]

STATEMENTS = tuple(name for name, _ in _STATEMENTS)


def subuniverses(alg: FiniteAlgebra) -> list[tuple[int, ...]]:
    """All nonempty subuniverses, from subalgebra_generate over every seed."""
    found = set()
    n = alg.size
    for mask in range(1, 1 << n):
        seed = [x for x in range(n) if mask >> x & 1]
        found.add(tuple(sorted(subalgebra_generate(alg, seed))))
    if alg.constants:
        found.add(tuple(sorted(subalgebra_generate(alg, []))))
    return sorted(found, key=lambda s: (len(s), s))
