"""Term-condition commutator, residuation and annihilators on Con(A)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import FiniteAlgebra, matrix_algebra
from .partitions import ConLattice, Congruence, all_congruences, cg

log = logging.getLogger(__name__)


class HypothesisError(RuntimeError):
    """A residuum/annihilator maximum is not attained in this Con(A)."""


def _violations(rep: np.ndarray, p, q, r, s) -> tuple[np.ndarray, np.ndarray]:
    top = rep[p] == rep[q]
    bottom = rep[r] == rep[s]
    return top & ~bottom, bottom & ~top


def term_condition_holds(alg: FiniteAlgebra, alpha: Congruence, beta: Congruence, delta: Congruence) -> bool:
    """C(alpha, beta; delta): every (alpha, beta)-matrix has its top row in delta iff its bottom row is."""
    p, q, r, s = matrix_algebra(alg, alpha, beta).columns()
    down, up = _violations(delta.array, p, q, r, s)
    return not (down.any() or up.any())


def commutator(alg: FiniteAlgebra, alpha: Congruence, beta: Congruence) -> Congruence:
    """[alpha, beta]: least congruence delta with C(alpha, beta; delta).

    Least fixpoint from Delta. A matrix whose top row lies in delta while its
    bottom row does not forces the bottom pair into every admissible delta
    (and symmetrically), so all forced pairs of a round are added at once.
    """
    n = alg.size
    delta = Congruence.identity(n)
    if alpha.is_identity() or beta.is_identity():
        return delta
    p, q, r, s = matrix_algebra(alg, alpha, beta).columns()
    while True:
        down, up = _violations(delta.array, p, q, r, s)
        if not (down.any() or up.any()):
            return delta
        forced = list(zip(r[down].tolist(), s[down].tolist())) + list(zip(p[up].tolist(), q[up].tolist()))
        delta = cg(alg, list(zip(range(n), delta.rep)) + forced)


def iterated_commutator(alg: FiniteAlgebra, alpha: Congruence, beta: Congruence, n: int) -> tuple[Congruence, int]:
    """n-th iterate [alpha, beta]^n and the index from which the chain is constant.

    Past the stabilization index the stable value is returned.
    """
    if n < 1:
        raise ValueError("iterate index starts at 1")
    chain = [commutator(alg, alpha, beta)]
    while True:
        nxt = commutator(alg, chain[-1], chain[-1])
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain[min(n, len(chain)) - 1], len(chain)


@dataclass(frozen=True, eq=False)
class CommutatorTable:
    lattice: ConLattice
    table: np.ndarray = field(repr=False)

    def __call__(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def of(self, alpha: Congruence, beta: Congruence) -> Congruence:
        lat = self.lattice
        return lat[self.table[lat.idx(alpha), lat.idx(beta)]]

    def iterate(self, i: int, j: int, n: int) -> int:
        x = int(self.table[i, j])
        for _ in range(n - 1):
            y = int(self.table[x, x])
            if y == x:
                break
            x = y
        return x

    def self_iterates(self, i: int) -> list[int]:
        """[theta, theta]^1, [theta, theta]^2, ... up to and including the stable value."""
        out = [int(self.table[i, i])]
        while True:
            y = int(self.table[out[-1], out[-1]])
            if y == out[-1]:
                return out
            out.append(y)


@lru_cache(maxsize=512)
def commutator_table(alg: FiniteAlgebra) -> CommutatorTable:
    lat = all_congruences(alg)
    m = len(lat)
    table = np.zeros((m, m), dtype=np.int64)
    meet = lat.meet_table
    for i in range(m):
        for j in range(m):
            if meet[i, j] == lat.bottom:
                continue  # [a, b] <= a & b = Delta
            table[i, j] = lat.idx(commutator(alg, lat[i], lat[j]))
    table.setflags(write=False)
    return CommutatorTable(lat, table)


@dataclass(frozen=True)
class HypothesisFlags:
    commutative: bool
    join_distributive: bool
    meets_intersection: bool
    top_neutral: bool
    top_compact: bool
    top_idempotent: bool

    @property
    def residuated(self) -> bool:
        """Commutative and join-distributive: the standing assumption for residuation."""
        return self.commutative and self.join_distributive

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


@lru_cache(maxsize=512)
def hypothesis_flags(alg: FiniteAlgebra) -> HypothesisFlags:
    """Exhaustive checks over Con(A).

    Join-distributivity is checked for binary joins in both arguments; with
    [a, Delta] = Delta this covers every finite join, hence every join here.
    """
    ct = commutator_table(alg)
    lat = ct.lattice
    T, J, M = ct.table, lat.join_table, lat.meet_table
    commutative = bool(np.array_equal(T, T.T))
    idx = np.arange(len(lat))
    left = T[idx[:, None, None], J[None, :, :]]  # [a, b v c]
    right = J[T[:, :, None], T[:, None, :]]
    dist_right = bool(np.array_equal(left, right))
    left2 = T[J[:, :, None], idx[None, None, :]]  # [a v b, c]
    right2 = J[T[:, None, :], T[None, :, :]]
    dist_left = bool(np.array_equal(left2, right2))
    top = lat.top
    return HypothesisFlags(
        commutative=commutative,
        join_distributive=dist_right and dist_left,
        meets_intersection=bool(np.array_equal(T, M)),
        top_neutral=all(T[i, top] == i for i in range(len(lat))),
        top_compact=True,
        top_idempotent=bool(T[top, top] == top),
    )


def residuum_index(ct: CommutatorTable, b: int, g: int) -> int:
    """Index of b -> g = max{a : [a, b] <= g}, as a join over principal congruences."""
    lat = ct.lattice
    leq, T = lat.leq, ct.table
    res = lat.join_all(z for z in lat.principal if leq[T[z, b], g])
    ok = leq[T[:, b], g]
    if not leq[T[res, b], g] or not all(leq[a, res] for a in np.flatnonzero(ok)):
        raise HypothesisError(
            f"{lat.algebra.name}: max{{a : [a, {lat[b]}] <= {lat[g]}}} is not attained"
        )
    return res


def residuum(alg: FiniteAlgebra, beta: Congruence, gamma: Congruence) -> Congruence:
    ct = commutator_table(alg)
    lat = ct.lattice
    return lat[residuum_index(ct, lat.idx(beta), lat.idx(gamma))]


@lru_cache(maxsize=512)
def perp_table(alg: FiniteAlgebra) -> tuple[int | None, ...]:
    """perp index for every congruence, None where the maximum is not attained."""
    ct = commutator_table(alg)
    out = []
    for b in range(len(ct.lattice)):
        try:
            out.append(residuum_index(ct, b, ct.lattice.bottom))
        except HypothesisError:
            out.append(None)
    return tuple(out)


def perp_index(ct: CommutatorTable, b: int) -> int:
    res = perp_table(ct.lattice.algebra)[b]
    if res is None:
        raise HypothesisError(f"{ct.lattice.algebra.name}: annihilator of {ct.lattice[b]} has no maximum")
    return res


def perp(alg: FiniteAlgebra, beta: Congruence) -> Congruence:
    ct = commutator_table(alg)
    return ct.lattice[perp_index(ct, ct.lattice.idx(beta))]


def perp_set(alg: FiniteAlgebra, pairs) -> Congruence:
    return perp(alg, cg(alg, pairs))


def annihilator(alg: FiniteAlgebra, beta: Congruence) -> list[Congruence]:
    """{a in Con(A) : [a, beta] = Delta}; an ideal (perp(beta)] when A is semiprime."""
    ct = commutator_table(alg)
    lat = ct.lattice
    b = lat.idx(beta)
    return [lat[a] for a in range(len(lat)) if ct.table[a, b] == lat.bottom]
