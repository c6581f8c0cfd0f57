"""Boolean center of Con(A) and algebra-level classifications."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FiniteAlgebra
from .commutator import HypothesisError, HypothesisFlags, commutator_table, hypothesis_flags, perp_table
from .partitions import Congruence
from .spectra import is_semiprime


class InternalError(AssertionError):
    pass


def boolean_center_indices(alg: FiniteAlgebra) -> dict[int, tuple[int, ...]]:
    """Complemented congruences mapped to all of their complements."""
    lat = commutator_table(alg).lattice
    J, M = lat.join_table, lat.meet_table
    out = {}
    for e in range(len(lat)):
        comps = tuple(f for f in range(len(lat)) if J[e, f] == lat.top and M[e, f] == lat.bottom)
        if comps:
            out[e] = comps
    return out


def boolean_center(alg: FiniteAlgebra) -> list[Congruence]:
    lat = commutator_table(alg).lattice
    return [lat[e] for e in boolean_center_indices(alg)]


def complement(alg: FiniteAlgebra, eps: Congruence) -> Congruence | None:
    """The complement of eps when it is unique, else None."""
    lat = commutator_table(alg).lattice
    comps = boolean_center_indices(alg).get(lat.idx(eps), ())
    return lat[comps[0]] if len(comps) == 1 else None


def is_abelian(alg: FiniteAlgebra) -> bool:
    ct = commutator_table(alg)
    return ct.table[ct.lattice.top, ct.lattice.top] == ct.lattice.bottom


def is_hyperarchimedean(alg: FiniteAlgebra) -> bool:
    """Every principal theta has some [theta, theta]^n in the Boolean center."""
    ct = commutator_table(alg)
    center = boolean_center_indices(alg)
    return all(any(x in center for x in ct.self_iterates(t)) for t in ct.lattice.principal)


def _perps_in_center(alg: FiniteAlgebra, over) -> bool | None:
    perps = perp_table(alg)
    center = boolean_center_indices(alg)
    if any(perps[t] is None for t in over):
        return None
    return all(perps[t] in center for t in over)


def is_baer(alg: FiniteAlgebra) -> bool:
    """perp(theta) is complemented for every principal theta.

    Raises HypothesisError when some annihilator has no maximum.
    """
    res = _perps_in_center(alg, commutator_table(alg).lattice.principal)
    if res is None:
        raise HypothesisError(f"{alg.name}: perp undefined for some principal congruence")
    return res


def is_strongly_baer(alg: FiniteAlgebra) -> bool:
    res = _perps_in_center(alg, range(len(commutator_table(alg).lattice)))
    if res is None:
        raise HypothesisError(f"{alg.name}: perp undefined for some congruence")
    return res


def has_principal_commutators(alg: FiniteAlgebra) -> bool:
    ct = commutator_table(alg)
    principal = set(ct.lattice.principal)
    return all(ct.table[a, b] in principal for a in principal for b in principal)


@dataclass(frozen=True)
class Implication:
    name: str
    hypothesis: str
    holds: bool | None  # None: hypothesis false or premise undetermined
    note: str = ""


@dataclass(frozen=True)
class ClassificationReport:
    abelian: bool
    semiprime: bool
    hyperarchimedean: bool
    baer: bool | None
    strongly_baer: bool | None
    boolean_center: tuple[Congruence, ...]
    flags: HypothesisFlags
    principal_commutators: bool
    compact_commutators: bool
    implications: tuple[Implication, ...] = field(default=())
    notes: tuple[str, ...] = field(default=())


def _implication(name, hypothesis, hyp_ok, premise, conclusion, note=""):
    if not hyp_ok or premise is None or conclusion is None:
        return Implication(name, hypothesis, None, note)
    return Implication(name, hypothesis, (not premise) or conclusion, note)


def classification_report(alg: FiniteAlgebra) -> ClassificationReport:
    flags = hypothesis_flags(alg)
    semiprime = is_semiprime(alg)
    hyper = is_hyperarchimedean(alg)
    try:
        baer = is_baer(alg)
    except HypothesisError:
        baer = None
    try:
        strongly = is_strongly_baer(alg)
    except HypothesisError:
        strongly = None
    principal_comm = has_principal_commutators(alg)
    notes = [
        "finite algebra: every congruence is compact, K(A) = Con(A) and Nabla is compact",
        "compact commutators hold trivially since K(A) = Con(A)",
    ]
    if flags.residuated and flags.top_neutral and baer is not None and strongly is not None:
        # in a finite algebra Baer and strongly Baer quantify over the same compact congruences
        if baer != strongly:
            raise InternalError(f"{alg.name}: Baer={baer} but strongly Baer={strongly}")
        notes.append("Baer and strongly Baer coincide (every congruence is compact)")
    neutral = flags.top_neutral
    implications = (
        _implication("hyperarchimedean => strongly Baer", "top_neutral", neutral, hyper, strongly),
        _implication("strongly Baer => semiprime", "top_neutral", neutral, strongly, semiprime),
        _implication(
            "Baer and principal commutators => semiprime",
            "top_neutral",
            neutral,
            None if baer is None else baer and principal_comm,
            semiprime,
        ),
    )
    return ClassificationReport(
        abelian=bool(is_abelian(alg)),
        semiprime=semiprime,
        hyperarchimedean=hyper,
        baer=baer,
        strongly_baer=strongly,
        boolean_center=tuple(boolean_center(alg)),
        flags=flags,
        principal_commutators=principal_comm,
        compact_commutators=True,
        implications=implications,
        notes=tuple(notes),
    )
