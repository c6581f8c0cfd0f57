"""Executable identity checks over a single algebra.

Each ``check_*`` function returns a ``Verdict``: PASS when every instance
holds, SKIPPED (with the failing hypothesis) when the statement's premises
are not met by this algebra, VIOLATION with the first counterexample otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from .algebra import FiniteAlgebra, quotient
from .classify import boolean_center_indices, is_baer, is_hyperarchimedean, is_strongly_baer, has_principal_commutators
from .commutator import HypothesisError, commutator_table, hypothesis_flags, perp_table, residuum_index
from .extensions import Status, Verdict
from .partitions import Congruence, cg
from .spectra import (
    RadicalMismatch,
    _MSystemOracle,
    is_semiprime,
    min_over,
    minimal_prime_check_perp,
    minimal_prime_check_residuum,
    msystem_characterization,
    radical_via_commutators,
    spectrum_indices,
    stone_topology,
)


class _Violation(Exception):
    pass


def _run(name: str, body: Callable[[], None], gates: Iterable[tuple[str, Callable[[], bool]]] = ()) -> Verdict:
    for label, ok in gates:
        if not ok():
            return Verdict(name, Status.SKIPPED, label)
    try:
        body()
    except _Violation as exc:
        return Verdict(name, Status.VIOLATION, str(exc))
    return Verdict(name, Status.PASS)


def _expect(cond, msg):
    if not cond:
        raise _Violation(msg)


# --- quotients ---------------------------------------------------------------


def lift_to_quotient(alg: FiniteAlgebra, theta: Congruence, alpha: Congruence) -> tuple[FiniteAlgebra, Congruence]:
    """(alpha v theta)/theta as a congruence of A/theta."""
    q, proj = quotient(alg, theta)
    joined = alpha | theta
    return q, Congruence.from_pairs(q.size, [(proj[a], proj[b]) for a, b in joined.pairs()])


def quotient_cg_identity(alg: FiniteAlgebra, theta: Congruence, pairs) -> bool:
    """(Cg_A(X) v theta)/theta == Cg_{A/theta}(X/theta)."""
    q, proj = quotient(alg, theta)
    lhs = lift_to_quotient(alg, theta, cg(alg, pairs))[1]
    rhs = cg(q, [(proj[a], proj[b]) for a, b in pairs])
    return lhs == rhs


@lru_cache(maxsize=1024)
def quotient_compatible(alg: FiniteAlgebra, theta: Congruence) -> bool:
    """[(a v t)/t, (b v t)/t] == ([a, b] v t)/t in A/t for every a, b.

    Holds in congruence-modular varieties; results that pass between A and a
    quotient are only asserted when it holds for the quotient in question.
    """
    ct = commutator_table(alg)
    lat = ct.lattice
    q, proj = quotient(alg, theta)
    qct = commutator_table(q)
    t = lat.idx(theta)
    J = lat.join_table

    def lifted(i):
        return qct.lattice.idx(Congruence.from_pairs(q.size, [(proj[a], proj[b]) for a, b in lat[i].pairs()]))

    up = {i: lifted(J[i, t]) for i in range(len(lat))}
    for a in range(len(lat)):
        for b in range(len(lat)):
            if qct.table[up[a], up[b]] != up[int(ct.table[a, b])]:
                return False
    return True


def check_quotient_cg(alg: FiniteAlgebra, rng: random.Random, trials: int = 1) -> Verdict:
    lat = commutator_table(alg).lattice
    n = alg.size

    def body():
        for _ in range(trials):
            theta = lat[rng.randrange(len(lat))]
            k = rng.randint(0, 2 * n)
            pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(k)]
            _expect(quotient_cg_identity(alg, theta, pairs), f"theta={theta}, X={pairs}")

    return _run("quotient_cg_identity", body)


# --- commutator basics and residuation ----------------------------------------


def _residuated(alg):
    return ("residuated=false", lambda: hypothesis_flags(alg).residuated)


def _semiprime(alg):
    return ("semiprime=false", lambda: is_semiprime(alg))


def check_commutator_bounds(alg: FiniteAlgebra) -> Verdict:
    """[a, b] <= a & b and monotone in both arguments."""
    ct = commutator_table(alg)
    lat = ct.lattice
    leq, T, M = lat.leq, ct.table, lat.meet_table

    def body():
        _expect(leq[T, M].all(), "[a, b] not below a & b")
        m = len(lat)
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if leq[a, c]:
                        _expect(leq[T[a, b], T[c, b]] and leq[T[b, a], T[b, c]], f"not monotone at {lat[a]} <= {lat[c]}")

    return _run("commutator_bounds", body)


def check_meet_collapse(alg: FiniteAlgebra) -> Verdict:
    ct = commutator_table(alg)

    def body():
        _expect(np.array_equal(ct.table, ct.lattice.meet_table), "commutator differs from the meet")

    return _run("commutator_equals_meet", body, [("meets_intersection=false", lambda: hypothesis_flags(alg).meets_intersection)])


def check_residuation(alg: FiniteAlgebra) -> Verdict:
    """Adjunction, the implication identities and the annihilator calculus."""
    ct = commutator_table(alg)
    lat = ct.lattice
    leq, T, J, M = lat.leq, ct.table, lat.join_table, lat.meet_table
    m = len(lat)

    def body():
        res = np.array([[residuum_index(ct, b, g) for g in range(m)] for b in range(m)])
        p = perp_table(alg)
        for b in range(m):
            _expect(T[b, p[b]] == lat.bottom, f"[b, b^perp] != Delta for b={lat[b]}")
            for g in range(m):
                for a in range(m):
                    _expect(leq[T[a, b], g] == leq[a, res[b, g]], f"adjunction fails at {lat[a]}, {lat[b]}, {lat[g]}")
        for a in range(m):
            for b in range(m):
                _expect(leq[b, res[a, b]], f"b not below a -> b for {lat[a]}, {lat[b]}")
                for t in range(m):
                    _expect(
                        res[J[a, t], J[b, t]] == res[a, J[b, t]],
                        f"(a v t) -> (b v t) != a -> (b v t) at {lat[a]}, {lat[b]}, {lat[t]}",
                    )
        _expect(p[lat.bottom] == lat.top, "Delta^perp != Nabla")
        for a in range(m):
            _expect(leq[a, p[p[a]]], f"a not below a^perp^perp for {lat[a]}")
            _expect(p[p[p[a]]] == p[a], f"triple perp differs for {lat[a]}")
            for b in range(m):
                _expect(p[J[a, b]] == M[p[a], p[b]], f"(a v b)^perp != a^perp & b^perp at {lat[a]}, {lat[b]}")
                _expect(p[J[a, b]] == p[p[M[p[a], p[b]]]], "(a v b)^perp differs from its double-perp form")
                if leq[a, b]:
                    _expect(leq[p[b], p[a]], "perp is not antitone")
                _expect(leq[p[b], p[a]] == leq[p[p[a]], p[p[b]]], "perp order reversal fails")

    return _run("residuation_identities", body, [_residuated(alg)])


def check_nabla_perp(alg: FiniteAlgebra) -> Verdict:
    lat = commutator_table(alg).lattice

    def body():
        _expect(perp_table(alg)[lat.top] == lat.bottom, "Nabla^perp != Delta")

    return _run("nabla_perp_is_delta", body, [_residuated(alg), ("top_neutral=false", lambda: hypothesis_flags(alg).top_neutral)])


def check_semiprime_perp(alg: FiniteAlgebra) -> Verdict:
    """Annihilator identities that need a semiprime algebra; also perps are radical."""
    ct = commutator_table(alg)
    lat = ct.lattice
    leq, T, M = lat.leq, ct.table, lat.meet_table
    m = len(lat)
    rad = spectrum_indices(alg).radical

    def body():
        p = perp_table(alg)
        for a in range(m):
            _expect(leq[a, p[a]] == (a == lat.bottom), f"a <= a^perp but a != Delta: {lat[a]}")
            _expect(rad[p[a]] == p[a], f"a^perp is not radical for {lat[a]}")
            for b in range(m):
                _expect(p[T[a, b]] == p[M[a, b]], f"[a, b]^perp != (a & b)^perp at {lat[a]}, {lat[b]}")
                _expect(p[p[M[a, b]]] == M[p[p[a]], p[p[b]]], f"double perp of a meet fails at {lat[a]}, {lat[b]}")
                _expect(leq[p[a], p[b]] == (p[T[a, b]] == p[b]), f"perp inclusion criterion fails at {lat[a]}, {lat[b]}")

    return _run("semiprime_annihilator_identities", body, [_residuated(alg), _semiprime(alg)])


def check_quotient_residuation(alg: FiniteAlgebra) -> Verdict:
    """In A/t: (a v t)/t -> (b v t)/t == (a -> (b v t))/t, and the perp special case."""
    ct = commutator_table(alg)
    lat = ct.lattice
    J = lat.join_table
    m = len(lat)
    skipped = []

    def body():
        for t in range(m):
            theta = lat[t]
            q, proj = quotient(alg, theta)
            if not quotient_compatible(alg, theta) or not hypothesis_flags(q).residuated:
                skipped.append(t)
                continue
            qct = commutator_table(q)

            def up(i):
                return qct.lattice.idx(Congruence.from_pairs(q.size, [(proj[x], proj[y]) for x, y in lat[i].pairs()]))

            ups = [up(J[i, t]) for i in range(m)]
            for a in range(m):
                for b in range(m):
                    lhs = residuum_index(qct, ups[a], ups[b])
                    _expect(lhs == ups[residuum_index(ct, a, J[b, t])], f"quotient residuum fails at t={theta}")
                _expect(
                    perp_table(q)[ups[a]] == ups[residuum_index(ct, a, t)],
                    f"((a v t)/t)^perp != (a -> t)/t at a={lat[a]}, t={theta}",
                )

    verdict = _run("quotient_residuation", body, [_residuated(alg)])
    if verdict.status is Status.PASS and skipped:
        if len(skipped) == m:
            return Verdict(verdict.statement, Status.SKIPPED, "quotient_compatible=false")
        return Verdict(verdict.statement, Status.PASS, f"{len(skipped)} quotient(s) not commutator-compatible, skipped")
    return verdict


def check_perp_quotient_semiprime(alg: FiniteAlgebra) -> Verdict:
    """A/t^perp semiprime for every t iff A semiprime."""
    lat = commutator_table(alg).lattice

    def body():
        p = perp_table(alg)
        all_semiprime = all(is_semiprime(quotient(alg, lat[p[t]])[0]) for t in range(len(lat)))
        _expect(all_semiprime == is_semiprime(alg), f"quotients semiprime={all_semiprime}, A semiprime={is_semiprime(alg)}")

    def compatible():
        p = perp_table(alg)
        return all(quotient_compatible(alg, lat[p[t]]) for t in range(len(lat)))

    return _run(
        "perp_quotients_semiprime",
        body,
        [_residuated(alg), ("top_neutral=false", lambda: hypothesis_flags(alg).top_neutral),
         ("quotient_compatible=false", compatible)],
    )


# --- radicals and spectra ------------------------------------------------------


def check_radical_characterization(alg: FiniteAlgebra) -> Verdict:
    """Radical via iterated commutators, plus the radical calculus."""
    ct = commutator_table(alg)
    lat = ct.lattice
    leq, T, J, M = lat.leq, ct.table, lat.join_table, lat.meet_table
    rad = spectrum_indices(alg).radical
    m = len(lat)

    def body():
        for t in range(m):
            try:
                radical_via_commutators(alg, lat[t])
            except RadicalMismatch as exc:
                raise _Violation(str(exc)) from None
            semiprime_elt = all(leq[a, t] for a in range(m) if leq[T[a, a], t])
            _expect((rad[t] == t) == semiprime_elt, f"radical vs semiprime element differs at {lat[t]}")
        for a in range(m):
            for b in range(m):
                _expect(rad[T[a, b]] == rad[M[a, b]] == M[rad[a], rad[b]], f"radical of [a, b] fails at {lat[a]}, {lat[b]}")
                _expect(rad[J[a, b]] == rad[J[rad[a], rad[b]]], f"radical of a join fails at {lat[a]}, {lat[b]}")

    return _run("radical_characterization", body, [_residuated(alg)])


def check_spec_structure(alg: FiniteAlgebra) -> Verdict:
    """Spec = meet-irreducibles that are radical; D turns [., .] and meets into intersections."""
    ct = commutator_table(alg)
    lat = ct.lattice
    leq, T, J, M = lat.leq, ct.table, lat.join_table, lat.meet_table
    si = spectrum_indices(alg)
    m = len(lat)

    def d(i):
        return frozenset(p for p in si.spec if not leq[i, p])

    def body():
        irreducible = [i for i in range(m) if i != lat.top and not any(
            M[x, y] == i for x in range(m) for y in range(m) if x != i and y != i)]
        expected = sorted(i for i in irreducible if si.radical[i] == i)
        _expect(sorted(si.spec) == expected, f"Spec {sorted(si.spec)} != radical meet-irreducibles {expected}")
        for a in range(m):
            for b in range(m):
                _expect(d(T[a, b]) == d(M[a, b]) == d(a) & d(b), f"D of [a, b] fails at {lat[a]}, {lat[b]}")
                _expect(d(J[a, b]) == d(a) | d(b), f"D of a join fails at {lat[a]}, {lat[b]}")
        for p in si.spec:
            _expect(_MSystemOracle(alg).is_m_system(((1 << alg.size ** 2) - 1) & ~lat[p].pair_mask),
                    f"complement of prime {lat[p]} is not an m-system")
        for t in range(m):
            mins = [lat.idx(c) for c in min_over(alg, lat[t])]
            _expect(lat.meet_all(mins) == si.radical[t], f"radical is not the meet of minimal primes over {lat[t]}")

    return _run("spectrum_structure", body, [_residuated(alg)])


def check_min_topology(alg: FiniteAlgebra) -> Verdict:
    """Relations between V, D and annihilators on Min(A)."""
    ct = commutator_table(alg)
    lat = ct.lattice
    leq = lat.leq
    si = spectrum_indices(alg)
    m = len(lat)

    def v(i):
        return frozenset(f for f in si.min if leq[i, f])

    def d(i):
        return frozenset(si.min) - v(i)

    def body():
        p = perp_table(alg)
        for a in range(m):
            _expect(lat.meet_all(v(p[a])) == p[a], f"a^perp is not the meet of the minimal primes above it: {lat[a]}")
            _expect(v(a) == v(p[p[a]]) == d(p[a]), f"V(a) on Min fails for {lat[a]}")
            _expect(d(a) == d(p[p[a]]) == v(p[a]), f"D(a) on Min fails for {lat[a]}")
            _expect((not d(a)) == leq[a, si.radical[lat.bottom]], f"empty D(a) on Min fails for {lat[a]}")
            for b in range(m):
                _expect((p[a] == p[b]) == (v(p[a]) == v(p[b])) == (d(p[a]) == d(p[b])), "equal perps criterion fails")
                for c in range(m):
                    _expect((lat.meet_table[p[a], p[b]] == p[c]) == (v(a) & v(b) == v(c)),
                            f"perp meet criterion fails at {lat[a]}, {lat[b]}, {lat[c]}")
                chain = [p[p[a]] == p[b], p[a] == p[p[b]], v(a) == v(p[b]), v(a) == d(b), d(p[a]) == d(b)]
                _expect(len(set(chain)) == 1, f"double perp criterion fails at {lat[a]}, {lat[b]}")

    return _run("min_topology_identities", body, [_residuated(alg), _semiprime(alg)])


def check_min_hausdorff(alg: FiniteAlgebra) -> Verdict:
    def body():
        top = stone_topology(alg, "min")
        _expect(top.is_hausdorff(), "Min(A) is not Hausdorff")
        _expect(top.all_clopen(), "some open subset of Min(A) is not closed")
        _expect(top.is_compact(), "Min(A) is not compact")

    return _run("min_topology_hausdorff", body, [_residuated(alg)])


def check_minimal_prime_perp(alg: FiniteAlgebra) -> Verdict:
    ct = commutator_table(alg)
    lat = ct.lattice
    si = spectrum_indices(alg)

    def body():
        p = perp_table(alg)
        for f in si.spec:
            crit = minimal_prime_check_perp(alg, lat[f])
            _expect(crit == (f in si.min), f"perp criterion={crit} but minimal={f in si.min} for {lat[f]}")
            iff = all(lat.leq[a, f] == (not lat.leq[p[a], f]) for a in range(len(lat)))
            _expect(iff == (f in si.min), f"iff form disagrees for {lat[f]}")

    return _run("minimal_prime_perp_criterion", body, [_residuated(alg), _semiprime(alg)])


def check_minimal_prime_residuum(alg: FiniteAlgebra) -> Verdict:
    lat = commutator_table(alg).lattice
    si = spectrum_indices(alg)

    def body():
        for f in si.spec:
            crit = minimal_prime_check_residuum(alg, lat[f])
            _expect(crit == (f in si.min), f"residuum criterion={crit} but minimal={f in si.min} for {lat[f]}")

    rad0 = lat[si.radical[lat.bottom]]
    return _run(
        "minimal_prime_residuum_criterion",
        body,
        [_residuated(alg), ("quotient_compatible=false", lambda: quotient_compatible(alg, rad0))],
    )


def check_msystem_characterization(alg: FiniteAlgebra, seed: int = 0, samples: int = 1000) -> Verdict:
    lat = commutator_table(alg).lattice
    stats = []

    def body():
        for t in range(len(lat)):
            for chk in msystem_characterization(alg, lat[t], samples=samples, seed=seed):
                stats.append(chk.exhaustive)
                _expect(chk.minimal == chk.maximal,
                        f"theta={chk.theta}, phi={chk.phi}: minimal={chk.minimal}, maximal m-system={chk.maximal}")

    verdict = _run(
        "msystem_characterization",
        body,
        [("join_distributive=false", lambda: hypothesis_flags(alg).join_distributive)],
    )
    if verdict.status is Status.PASS:
        if not stats:
            mode = "vacuous (no primes)"
        elif all(stats):
            mode = "exhaustive"
        else:
            mode = f"sampled (seed {seed}, {samples} samples)"
        return Verdict(verdict.statement, Status.PASS, mode)
    return verdict


# --- Boolean center and classification ---------------------------------------


def check_boolean_center(alg: FiniteAlgebra) -> Verdict:
    """Complemented congruences: commutator with them is the meet, complement is perp, closed sublattice."""
    ct = commutator_table(alg)
    lat = ct.lattice
    T, M, J = ct.table, lat.meet_table, lat.join_table
    center = boolean_center_indices(alg)

    def body():
        p = perp_table(alg)
        _expect(lat.bottom in center and lat.top in center, "Delta or Nabla not complemented")
        for e, comps in center.items():
            _expect(comps == (p[e],), f"complement of {lat[e]} is not unique or not its perp")
            for a in range(len(lat)):
                _expect(T[e, a] == M[e, a], f"[e, a] != e & a for e={lat[e]}, a={lat[a]}")
            for f in center:
                _expect(J[e, f] in center and M[e, f] in center, "Boolean center not closed")
                _expect(p[J[e, f]] == M[p[e], p[f]] and p[M[e, f]] == J[p[e], p[f]], "De Morgan fails")

    return _run("boolean_center_structure", body,
                [_residuated(alg), ("top_neutral=false", lambda: hypothesis_flags(alg).top_neutral)])


def _baer_gates(alg):
    return [_residuated(alg), ("top_neutral=false", lambda: hypothesis_flags(alg).top_neutral)]


def check_hyperarchimedean_strongly_baer(alg: FiniteAlgebra) -> Verdict:
    def body():
        _expect(not is_hyperarchimedean(alg) or is_strongly_baer(alg), "hyperarchimedean but not strongly Baer")

    return _run("hyperarchimedean_implies_strongly_baer", body, _baer_gates(alg))


def check_strongly_baer_semiprime(alg: FiniteAlgebra) -> Verdict:
    def body():
        _expect(not is_strongly_baer(alg) or is_semiprime(alg), "strongly Baer but not semiprime")

    return _run("strongly_baer_implies_semiprime", body, _baer_gates(alg))


def check_baer_principal_semiprime(alg: FiniteAlgebra) -> Verdict:
    def body():
        _expect(not (is_baer(alg) and has_principal_commutators(alg)) or is_semiprime(alg),
                "Baer with principal commutators but not semiprime")

    return _run("baer_principal_commutators_implies_semiprime", body, _baer_gates(alg))


ALGEBRA_CHECKS = (
    check_commutator_bounds,
    check_meet_collapse,
    check_residuation,
    check_nabla_perp,
    check_semiprime_perp,
    check_quotient_residuation,
    check_perp_quotient_semiprime,
    check_radical_characterization,
    check_spec_structure,
    check_min_topology,
    check_min_hausdorff,
    check_minimal_prime_perp,
    check_minimal_prime_residuum,
    check_msystem_characterization,
    check_boolean_center,
    check_hyperarchimedean_strongly_baer,
    check_strongly_baer_semiprime,
    check_baer_principal_semiprime,
)


def algebra_verdicts(alg: FiniteAlgebra, seed: int = 0) -> list[Verdict]:
    out = []
    for check in ALGEBRA_CHECKS:
        try:
            if check is check_msystem_characterization:
                out.append(check(alg, seed=seed))
            else:
                out.append(check(alg))
        except HypothesisError as exc:
            out.append(Verdict(check.__name__.removeprefix("check_"), Status.SKIPPED, str(exc)))
    return out
