"""Prime spectra, radicals, m-systems and Stone topologies."""

from __future__ import annotations

import itertools
import logging
import random
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import FiniteAlgebra
from .commutator import commutator_table, hypothesis_flags, perp_index, residuum_index
from .partitions import Congruence

log = logging.getLogger(__name__)


class TopologyError(ValueError):
    pass


def _idx(alg, c: Congruence) -> int:
    return commutator_table(alg).lattice.idx(c)


def _prime_index(ct, phi: int, over) -> bool:
    lat = ct.lattice
    if phi == lat.top:
        return False
    below = lat.leq[:, phi]
    over = np.asarray(over)
    sub = ct.table[np.ix_(over, over)]
    bad = below[sub] & ~below[over][:, None] & ~below[over][None, :]
    return not bad.any()


def is_prime(alg: FiniteAlgebra, phi: Congruence, method: str = "principal") -> bool:
    """Primality of phi in Con(A).

    ``method="principal"`` quantifies over principal congruences only, which
    agrees with the full definition when the commutator is join-distributive;
    ``method="definition"`` quantifies over all of Con(A).
    """
    ct = commutator_table(alg)
    lat = ct.lattice
    if method == "principal":
        over = lat.principal
    elif method == "definition":
        over = range(len(lat))
    else:
        raise ValueError(f"unknown method {method!r}")
    return _prime_index(ct, lat.idx(phi), list(over))


def _minimal(lat, idxs):
    return [i for i in idxs if not any(j != i and lat.leq[j, i] for j in idxs)]


def _maximal(lat, idxs):
    return [i for i in idxs if not any(j != i and lat.leq[i, j] for j in idxs)]


@dataclass(frozen=True)
class SpectrumIndices:
    spec: tuple[int, ...]
    min: tuple[int, ...]
    max: tuple[int, ...]
    radical: tuple[int, ...]  # radical index of every congruence


@lru_cache(maxsize=512)
def spectrum_indices(alg: FiniteAlgebra) -> SpectrumIndices:
    ct = commutator_table(alg)
    lat = ct.lattice
    everything = list(range(len(lat)))
    spec = [i for i in everything if _prime_index(ct, i, everything)]
    proper = [i for i in everything if i != lat.top]
    radical = []
    for t in everything:
        radical.append(lat.meet_all(p for p in spec if lat.leq[t, p]))
    return SpectrumIndices(tuple(spec), tuple(_minimal(lat, spec)), tuple(_maximal(lat, proper)), tuple(radical))


@dataclass(frozen=True)
class SpectrumReport:
    spec: tuple[Congruence, ...]
    min: tuple[Congruence, ...]
    max: tuple[Congruence, ...]
    radical_of_delta: Congruence
    semiprime: bool

    @property
    def max_in_spec(self) -> bool:
        return set(self.max) <= set(self.spec)


def spectrum(alg: FiniteAlgebra) -> SpectrumReport:
    lat = commutator_table(alg).lattice
    si = spectrum_indices(alg)
    rad = si.radical[lat.bottom]
    return SpectrumReport(
        spec=tuple(lat[i] for i in si.spec),
        min=tuple(lat[i] for i in si.min),
        max=tuple(lat[i] for i in si.max),
        radical_of_delta=lat[rad],
        semiprime=rad == lat.bottom,
    )


def is_semiprime(alg: FiniteAlgebra) -> bool:
    return spectrum_indices(alg).radical[0] == 0


def radical(alg: FiniteAlgebra, theta: Congruence) -> Congruence:
    """Intersection of the primes above theta (Nabla when there are none)."""
    lat = commutator_table(alg).lattice
    return lat[spectrum_indices(alg).radical[lat.idx(theta)]]


class RadicalMismatch(AssertionError):
    pass


def radical_via_commutators(alg: FiniteAlgebra, theta: Congruence) -> Congruence:
    """{(a, b) : [Cg(a,b), Cg(a,b)]^n <= theta for some n}, checked against ``radical``."""
    ct = commutator_table(alg)
    lat = ct.lattice
    t = lat.idx(theta)
    n = alg.size
    pairs = [
        (a, b)
        for a in range(n)
        for b in range(n)
        if any(lat.leq[x, t] for x in ct.self_iterates(lat.cg_index(a, b)))
    ]
    rel = Congruence.from_pairs(n, pairs)
    expected = radical(alg, theta)
    if rel != expected or len(pairs) != len(expected.pairs()):
        flags = hypothesis_flags(alg)
        raise RadicalMismatch(
            f"{alg.name}: commutator radical of {theta} is {rel}, prime radical is {expected} (flags {flags})"
        )
    return rel


# --- V, D and topologies ----------------------------------------------------


def vset(alg: FiniteAlgebra, theta: Congruence) -> frozenset[Congruence]:
    lat = commutator_table(alg).lattice
    t = lat.idx(theta)
    return frozenset(lat[p] for p in spectrum_indices(alg).spec if lat.leq[t, p])


def dset(alg: FiniteAlgebra, theta: Congruence) -> frozenset[Congruence]:
    lat = commutator_table(alg).lattice
    return frozenset(lat[p] for p in spectrum_indices(alg).spec) - vset(alg, theta)


@dataclass(frozen=True)
class Topology:
    """Finite topology on a list of congruences; open sets are frozensets of point positions."""

    algebra: FiniteAlgebra
    kind: str
    points: tuple[Congruence, ...]
    opens: frozenset[frozenset[int]] = field(repr=False)
    basis: dict = field(repr=False, compare=False)  # (a, b) -> frozenset of point positions

    def __post_init__(self):
        full = frozenset(range(len(self.points)))
        if frozenset() not in self.opens or full not in self.opens:
            raise TopologyError("a topology contains the empty set and the whole space")
        for u in self.opens:
            for v in self.opens:
                if u | v not in self.opens or u & v not in self.opens:
                    raise TopologyError("open sets not closed under finite union/intersection")

    def is_open(self, s) -> bool:
        return frozenset(s) in self.opens

    def is_hausdorff(self) -> bool:
        basics = set(self.basis.values())
        for x, y in itertools.combinations(range(len(self.points)), 2):
            if not any(x in u and y in v and not (u & v) for u in basics for v in basics):
                return False
        return True

    def all_clopen(self) -> bool:
        full = frozenset(range(len(self.points)))
        return all(full - u in self.opens for u in self.opens)

    def is_compact(self) -> bool:
        return True  # finitely many points


def stone_topology(alg: FiniteAlgebra, points: str = "spec") -> Topology:
    """Opens D(theta) & points for theta in Con(A); basis D(a, b) & points."""
    ct = commutator_table(alg)
    lat = ct.lattice
    si = spectrum_indices(alg)
    if points == "spec":
        pts = si.spec
    elif points == "min":
        pts = si.min
    elif points == "max":
        if not set(si.max) <= set(si.spec):
            raise TopologyError(f"{alg.name}: Max(A) is not contained in Spec(A)")
        pts = si.max
    else:
        raise ValueError(f"unknown point set {points!r}")

    def d(t):
        return frozenset(k for k, p in enumerate(pts) if not lat.leq[t, p])

    opens = frozenset(d(t) for t in range(len(lat)))
    basis = {(a, b): d(lat.cg_index(a, b)) for a in range(alg.size) for b in range(alg.size)}
    return Topology(alg, points, tuple(lat[p] for p in pts), opens, basis)


# --- m-systems -------------------------------------------------------------


def _pair_bit(n, a, b):
    return 1 << (a * n + b)


def _mask_of(n, pairs) -> int:
    m = 0
    for a, b in pairs:
        m |= _pair_bit(n, a, b)
    return m


def _mask_pairs(n, mask):
    out = []
    while mask:
        low = mask & -mask
        k = low.bit_length() - 1
        out.append((k // n, k % n))
        mask ^= low
    return out


class _MSystemOracle:
    """Bitmask m-system tests for one algebra."""

    def __init__(self, alg: FiniteAlgebra):
        self.ct = commutator_table(alg)
        self.lat = self.ct.lattice
        self.n = alg.size
        self.cong_mask = [c.pair_mask for c in self.lat]
        self.cg_of = [self.lat.cg_index(a, b) for a in range(self.n) for b in range(self.n)]

    def is_m_system(self, mask: int) -> bool:
        members = [k for k in range(self.n * self.n) if mask >> k & 1]
        T = self.ct.table
        for x in members:
            cx = self.cg_of[x]
            for y in members:
                if not self.cong_mask[T[cx, self.cg_of[y]]] & mask:
                    return False
        return True


def is_m_system(alg: FiniteAlgebra, pairs) -> bool:
    oracle = _MSystemOracle(alg)
    return oracle.is_m_system(_mask_of(alg.size, pairs))


def maximal_disjoint_congruences(alg: FiniteAlgebra, pairs, alpha: Congruence) -> list[Congruence]:
    """Maximal congruences above alpha and disjoint from the pair set."""
    lat = commutator_table(alg).lattice
    s = _mask_of(alg.size, pairs)
    a = lat.idx(alpha)
    if lat[a].pair_mask & s:
        raise ValueError("alpha meets the pair set")
    cands = [i for i in range(len(lat)) if lat.leq[a, i] and not lat[i].pair_mask & s]
    return [lat[i] for i in _maximal(lat, cands)]


def min_over(alg: FiniteAlgebra, theta: Congruence) -> list[Congruence]:
    lat = commutator_table(alg).lattice
    t = lat.idx(theta)
    above = [p for p in spectrum_indices(alg).spec if lat.leq[t, p]]
    return [lat[i] for i in _minimal(lat, above)]


@dataclass(frozen=True)
class MSystemCheck:
    theta: Congruence
    phi: Congruence
    minimal: bool  # phi in Min(V(theta))
    maximal: bool  # Nabla \ phi maximal among m-systems disjoint from theta
    exhaustive: bool
    candidates_checked: int


def msystem_characterization(alg: FiniteAlgebra, theta: Congruence, exhaustive_limit: int = 4,
                             samples: int = 1000, seed: int = 0) -> list[MSystemCheck]:
    """For every phi in V(theta): is phi minimal over theta, and is Nabla \\ phi a maximal m-system?

    Strict supersets of Nabla \\ phi disjoint from theta are Nabla \\ phi plus a
    nonempty subset of phi \\ theta. They are all tried when |A| <= exhaustive_limit,
    otherwise ``samples`` random ones (seeded) plus the complements of the
    primes strictly between theta and phi.
    """
    oracle = _MSystemOracle(alg)
    lat = oracle.lat
    n = alg.size
    full = (1 << (n * n)) - 1
    t = lat.idx(theta)
    theta_mask = lat[t].pair_mask
    si = spectrum_indices(alg)
    rng = random.Random(seed)
    minimal = set(lat.idx(c) for c in min_over(alg, theta))
    out = []
    for p in si.spec:
        if not lat.leq[t, p]:
            continue
        base = full & ~lat[p].pair_mask
        extra = _mask_pairs(n, lat[p].pair_mask & ~theta_mask)
        checked = 0
        found = False
        if n <= exhaustive_limit:
            for r in range(1, len(extra) + 1):
                for combo in itertools.combinations(extra, r):
                    checked += 1
                    if oracle.is_m_system(base | _mask_of(n, combo)):
                        found = True
                        break
                if found:
                    break
            exhaustive = True
        else:
            tries = [full & ~lat[q].pair_mask for q in si.spec if lat.leq[t, q] and lat.leq[q, p] and q != p]
            for _ in range(samples):
                k = rng.randint(1, len(extra)) if extra else 0
                if k:
                    tries.append(base | _mask_of(n, rng.sample(extra, k)))
            for mask in tries:
                checked += 1
                if oracle.is_m_system(mask):
                    found = True
                    break
            exhaustive = False
        out.append(MSystemCheck(lat[t], lat[p], p in minimal, not found, exhaustive, checked))
    return out


# --- minimal primes through annihilators ------------------------------------


def minimal_prime_check_perp(alg: FiniteAlgebra, phi: Congruence) -> bool:
    """For all alpha <= phi: perp(alpha) is not below phi.

    Equivalent to phi in Min(A) for semiprime A; otherwise the raw result is
    returned with a warning.
    """
    ct = commutator_table(alg)
    lat = ct.lattice
    f = lat.idx(phi)
    if not is_semiprime(alg):
        warnings.warn(f"{alg.name} is not semiprime; perp test is not a Min(A) criterion", stacklevel=2)
    return all(not lat.leq[perp_index(ct, a), f] for a in range(len(lat)) if lat.leq[a, f])


def minimal_prime_check_residuum(alg: FiniteAlgebra, phi: Congruence) -> bool:
    """For all alpha <= phi: alpha -> rad(Delta) is not below phi."""
    ct = commutator_table(alg)
    lat = ct.lattice
    f = lat.idx(phi)
    rad = spectrum_indices(alg).radical[lat.bottom]
    return all(not lat.leq[residuum_index(ct, a, rad), f] for a in range(len(lat)) if lat.leq[a, f])


def radical_equiv_classes(alg: FiniteAlgebra) -> list[list[Congruence]]:
    lat = commutator_table(alg).lattice
    groups: dict[int, list[Congruence]] = {}
    for i, r in enumerate(spectrum_indices(alg).radical):
        groups.setdefault(r, []).append(lat[i])
    return [groups[r] for r in sorted(groups)]
