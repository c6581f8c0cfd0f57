"""Equivalences and congruences in representative-array form.

A partition of {0..n-1} is stored as ``rep`` with ``rep[x]`` the least
element of the block of ``x``; two partitions are equal iff their arrays are.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np

from .algebra import FiniteAlgebra

DEFAULT_MAX_CON = 20000


class EnumerationCapExceeded(RuntimeError):
    pass


def _canonical(parent: list[int]) -> tuple[int, ...]:
    """Union-find parents -> minimal-representative array."""
    n = len(parent)
    root = [_find(parent, x) for x in range(n)]
    least: dict[int, int] = {}
    for x in range(n):
        least.setdefault(root[x], x)
    return tuple(least[root[x]] for x in range(n))


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@dataclass(frozen=True)
class Congruence:
    rep: tuple[int, ...]

    def __post_init__(self):
        for x, r in enumerate(self.rep):
            if r > x or self.rep[r] != r:
                raise ValueError(f"not a canonical representative array: {self.rep}")

    @classmethod
    def identity(cls, n: int) -> Congruence:
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> Congruence:
        return cls((0,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Congruence:
        """Equivalence (not congruence) generated by the pairs."""
        parent = list(range(n))
        for a, b in pairs:
            ra, rb = _find(parent, a), _find(parent, b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return cls(_canonical(parent))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> Congruence:
        pairs = []
        for block in blocks:
            block = list(block)
            pairs.extend((block[0], x) for x in block[1:])
        return cls.from_pairs(n, pairs)

    @property
    def size(self) -> int:
        return len(self.rep)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.rep, dtype=np.int64)

    def related(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, r in enumerate(self.rep):
            out.setdefault(r, []).append(x)
        return list(out.values())

    @property
    def num_blocks(self) -> int:
        return sum(1 for x, r in enumerate(self.rep) if x == r)

    def pairs(self) -> list[tuple[int, int]]:
        """All ordered pairs, the diagonal included."""
        return [(a, b) for block in self.blocks() for a in block for b in block]

    @cached_property
    def pair_mask(self) -> int:
        """Bitmask over A^2, bit a*n+b set iff (a, b) is in the relation."""
        n = self.size
        mask = 0
        for a, b in self.pairs():
            mask |= 1 << (a * n + b)
        return mask

    def is_identity(self) -> bool:
        return self.rep == tuple(range(self.size))

    def is_total(self) -> bool:
        return all(r == 0 for r in self.rep)

    def __le__(self, other: Congruence) -> bool:
        return pleq(self, other)

    def __and__(self, other: Congruence) -> Congruence:
        return pmeet(self, other)

    def __or__(self, other: Congruence) -> Congruence:
        return pjoin(self, other)

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks())


def _check_sizes(p: Congruence, q: Congruence):
    if p.size != q.size:
        raise ValueError(f"universe sizes differ: {p.size} vs {q.size}")


def pleq(p: Congruence, q: Congruence) -> bool:
    _check_sizes(p, q)
    return all(q.rep[x] == q.rep[r] for x, r in enumerate(p.rep))


def pmeet(p: Congruence, q: Congruence) -> Congruence:
    _check_sizes(p, q)
    first: dict[tuple[int, int], int] = {}
    return Congruence(tuple(first.setdefault((p.rep[x], q.rep[x]), x) for x in range(p.size)))


def pjoin(p: Congruence, q: Congruence) -> Congruence:
    _check_sizes(p, q)
    parent = list(p.rep)
    for x, r in enumerate(q.rep):
        ra, rb = _find(parent, x), _find(parent, r)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return Congruence(_canonical(parent))


def is_compatible(alg: FiniteAlgebra, rep) -> bool:
    """Exhaustive single-substitution check of operation compatibility."""
    rep = np.asarray(rep)
    for (_, arity), arr in zip(alg.signature.ops, alg.arrays):
        for pos in range(arity):
            for x in range(alg.size):
                r = int(rep[x])
                if r == x:
                    continue
                if not np.array_equal(rep[np.take(arr, x, axis=pos)], rep[np.take(arr, r, axis=pos)]):
                    return False
    return True


def cg(alg: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing ``pairs``.

    Every union performed is pushed on a worklist; a popped pair (a, b) is
    pushed through every basic translation f(.., x, ..), one argument
    position at a time.
    """
    n = alg.size
    parent = list(range(n))
    work: list[tuple[int, int]] = []

    def union(a, b):
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            work.append((a, b))

    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair ({a}, {b}) outside the universe")
        union(a, b)
    ops = [(arity, arr) for (_, arity), arr in zip(alg.signature.ops, alg.arrays) if arity > 0]
    while work:
        a, b = work.pop()
        for arity, arr in ops:
            for pos in range(arity):
                left = np.take(arr, a, axis=pos).ravel().tolist()
                right = np.take(arr, b, axis=pos).ravel().tolist()
                for u, v in zip(left, right):
                    if u != v:
                        union(u, v)
    return Congruence(_canonical(parent))


def principal_congruences(alg: FiniteAlgebra) -> list[Congruence]:
    seen = {Congruence.identity(alg.size)}
    for a in range(alg.size):
        for b in range(a + 1, alg.size):
            seen.add(cg(alg, [(a, b)]))
    return sorted(seen, key=_order_key)


def _order_key(c: Congruence):
    return (-c.num_blocks, c.rep)


def max_con_from_env() -> int:
    value = os.environ.get("CSPEC_MAX_CON")
    return int(value) if value else DEFAULT_MAX_CON


@dataclass(frozen=True, eq=False)
class ConLattice:
    """Con(A) listed canonically: by decreasing block count, then rep array.

    Index 0 is Delta and the last index is Nabla. In a finite algebra every
    congruence is compact, so K(A) = Con(A).
    """

    algebra: FiniteAlgebra
    congruences: tuple[Congruence, ...]
    principal: tuple[int, ...]
    pair_index: np.ndarray = field(repr=False)

    @cached_property
    def index(self) -> dict[Congruence, int]:
        return {c: i for i, c in enumerate(self.congruences)}

    def __len__(self):
        return len(self.congruences)

    def __getitem__(self, i) -> Congruence:
        return self.congruences[i]

    def __iter__(self):
        return iter(self.congruences)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.congruences) - 1

    def idx(self, c: Congruence) -> int:
        return self.index[c]

    def cg_index(self, a: int, b: int) -> int:
        return int(self.pair_index[a, b])

    @cached_property
    def leq(self) -> np.ndarray:
        m = len(self.congruences)
        reps = np.array([c.rep for c in self.congruences], dtype=np.int64).reshape(m, self.algebra.size)
        # p <= q iff q identifies x with rep_p[x] for every x
        out = np.zeros((m, m), dtype=bool)
        for i in range(m):
            out[i] = np.all(reps[:, reps[i]] == reps, axis=1)
        out.setflags(write=False)
        return out

    @cached_property
    def join_table(self) -> np.ndarray:
        return self._binary_table(pjoin)

    @cached_property
    def meet_table(self) -> np.ndarray:
        return self._binary_table(pmeet)

    def _binary_table(self, fn) -> np.ndarray:
        m = len(self.congruences)
        out = np.empty((m, m), dtype=np.int64)
        for i in range(m):
            for j in range(i, m):
                out[i, j] = out[j, i] = self.index[fn(self.congruences[i], self.congruences[j])]
        out.setflags(write=False)
        return out

    def join_all(self, indices: Iterable[int]) -> int:
        acc = self.bottom
        for i in indices:
            acc = int(self.join_table[acc, i])
        return acc

    def meet_all(self, indices: Iterable[int]) -> int:
        acc = self.top
        for i in indices:
            acc = int(self.meet_table[acc, i])
        return acc

    def below(self, i: int) -> list[int]:
        return [j for j in range(len(self)) if self.leq[j, i]]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges (lower, upper)."""
        leq = self.leq
        m = len(self)
        edges = []
        for i in range(m):
            for j in range(m):
                if i != j and leq[i, j]:
                    if not any(k not in (i, j) and leq[i, k] and leq[k, j] for k in range(m)):
                        edges.append((i, j))
        return edges


def all_congruences(alg: FiniteAlgebra, max_size: int | None = None) -> ConLattice:
    """Enumerate Con(A) as the join-closure of the principal congruences."""
    return _all_congruences(alg, max_size if max_size is not None else max_con_from_env())


@lru_cache(maxsize=512)
def _all_congruences(alg: FiniteAlgebra, cap: int) -> ConLattice:
    n = alg.size
    pair_cong: dict[tuple[int, int], Congruence] = {}
    for a in range(n):
        for b in range(a + 1, n):
            pair_cong[a, b] = cg(alg, [(a, b)])
    delta = Congruence.identity(n)
    principal = set(pair_cong.values()) | {delta}
    found = set(principal)
    frontier = list(principal)
    while frontier:
        if len(found) > cap:
            raise EnumerationCapExceeded(
                f"{alg.name}: more than {cap} congruences (raise CSPEC_MAX_CON to continue)"
            )
        nxt = []
        for x in frontier:
            for y in principal:
                z = pjoin(x, y)
                if z not in found:
                    found.add(z)
                    nxt.append(z)
        frontier = nxt
    if len(found) > cap:
        raise EnumerationCapExceeded(f"{alg.name}: more than {cap} congruences (raise CSPEC_MAX_CON to continue)")
    congruences = tuple(sorted(found, key=_order_key))
    index = {c: i for i, c in enumerate(congruences)}
    pair_index = np.zeros((n, n), dtype=np.int64)
    for (a, b), c in pair_cong.items():
        pair_index[a, b] = pair_index[b, a] = index[c]
    pair_index.setflags(write=False)
    return ConLattice(alg, congruences, tuple(sorted(index[c] for c in principal)), pair_index)
