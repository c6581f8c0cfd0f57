"""Finite algebras over the universe {0, ..., n-1}.

Operation tables are stored row-major with the leftmost argument varying
slowest, which is also the order used by the ``.alg`` file format.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class AlgebraError(ValueError):
    """Raised for malformed algebras, terms or subuniverses."""


@dataclass(frozen=True)
class Signature:
    ops: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.ops]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate operation names in {names}")
        for name, arity in self.ops:
            if arity < 0:
                raise AlgebraError(f"operation {name!r} has negative arity")

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.ops]

    def arity(self, name: str) -> int:
        for other, arity in self.ops:
            if other == name:
                return arity
        raise AlgebraError(f"unknown operation symbol {name!r}")

    def __len__(self):
        return len(self.ops)


@dataclass(frozen=True)
class FiniteAlgebra:
    """An algebra on {0..size-1} with one flat table per operation.

    ``tables[i]`` has length ``size ** arity`` and lists the values of the
    i-th operation in lexicographic argument order.
    """

    size: int
    signature: Signature
    tables: tuple[tuple[int, ...], ...]
    name: str = field(default="A", compare=False)
    element_names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.size < 1:
            raise AlgebraError("algebras are nonempty")
        if len(self.tables) != len(self.signature):
            raise AlgebraError("one table per operation is required")
        for (opname, arity), table in zip(self.signature.ops, self.tables):
            if len(table) != self.size**arity:
                raise AlgebraError(
                    f"table of {opname!r} has {len(table)} entries, expected {self.size ** arity}"
                )
            if any(not 0 <= v < self.size for v in table):
                raise AlgebraError(f"table of {opname!r} has an entry outside 0..{self.size - 1}")
        if self.element_names is not None and len(self.element_names) != self.size:
            raise AlgebraError("element_names must name every element")

    @classmethod
    def from_functions(cls, size, ops, name="A", element_names=None) -> FiniteAlgebra:
        """Build an algebra from ``[(opname, arity, python_callable), ...]``."""
        sig = Signature(tuple((opname, arity) for opname, arity, _ in ops))
        tables = []
        for _, arity, fn in ops:
            tables.append(
                tuple(fn(*args) % size for args in itertools.product(range(size), repeat=arity))
            )
        return cls(size, sig, tuple(tables), name=name, element_names=element_names)

    @property
    def universe(self) -> range:
        return range(self.size)

    @cached_property
    def arrays(self) -> tuple[np.ndarray, ...]:
        """Tables reshaped to ``(n,) * arity`` numpy arrays."""
        out = []
        for (_, arity), table in zip(self.signature.ops, self.tables):
            arr = np.asarray(table, dtype=np.int64).reshape((self.size,) * arity)
            arr.setflags(write=False)
            out.append(arr)
        return tuple(out)

    def op(self, name: str) -> np.ndarray:
        return self.arrays[self.signature.names.index(name)]

    def apply(self, name: str, *args: int) -> int:
        try:
            idx = self.signature.names.index(name)
        except ValueError:
            raise AlgebraError(f"unknown operation symbol {name!r}") from None
        arity = self.signature.ops[idx][1]
        if len(args) != arity:
            raise AlgebraError(f"{name} takes {arity} arguments, got {len(args)}")
        return int(self.arrays[idx][tuple(args)])

    @property
    def constants(self) -> list[int]:
        return [int(arr[()]) for (_, arity), arr in zip(self.signature.ops, self.arrays) if arity == 0]

    def label(self, x: int) -> str:
        return self.element_names[x] if self.element_names else str(x)

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, size={self.size}, ops={self.signature.names})"


# --- terms -----------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise AlgebraError("variable indices are nonnegative")


@dataclass(frozen=True)
class Op:
    name: str
    args: tuple[Term, ...] = ()


Term = Var | Op


def var(i: int) -> Var:
    return Var(i)


def op(name: str, *args: Term) -> Op:
    return Op(name, tuple(args))


def eval_term(alg: FiniteAlgebra, t: Term, env: Sequence[int]) -> int:
    if isinstance(t, Var):
        if t.index >= len(env):
            raise AlgebraError(f"variable x{t.index} not covered by an environment of length {len(env)}")
        return env[t.index]
    arity = alg.signature.arity(t.name)
    if len(t.args) != arity:
        raise AlgebraError(f"{t.name!r} has arity {arity}, got {len(t.args)} arguments")
    return alg.apply(t.name, *(eval_term(alg, s, env) for s in t.args))


# --- closure in direct powers ---------------------------------------------


def _decode(codes: np.ndarray, n: int, m: int) -> list[np.ndarray]:
    """Split codes of A^m into their m coordinate arrays (most significant first)."""
    return [(codes // n ** (m - 1 - j)) % n for j in range(m)]


def _apply_coordinatewise(table: np.ndarray, n: int, m: int, arg_codes: list[np.ndarray]) -> np.ndarray:
    coords = [_decode(c, n, m) for c in arg_codes]
    out = np.zeros(np.broadcast_shapes(*(c.shape for c in arg_codes)), dtype=np.int64)
    for j in range(m):
        out = out * n + table[tuple(c[j] for c in coords)]
    return out.ravel()


def power_closure(alg: FiniteAlgebra, m: int, seeds: Iterable[int]) -> np.ndarray:
    """Subuniverse of ``alg ** m`` generated by the given element codes.

    An element (x_0, ..., x_{m-1}) has code sum x_j * n**(m-1-j). Semi-naive
    worklist: each round only combines argument tuples that use at least one
    element found in the previous round.
    """
    n = alg.size
    total = n**m
    member = np.zeros(total, dtype=bool)
    seeds = np.fromiter(seeds, dtype=np.int64)
    member[seeds] = True
    for (_, arity), table in zip(alg.signature.ops, alg.arrays):
        if arity == 0:
            c = int(table[()])
            member[sum(c * n**j for j in range(m))] = True
    frontier = np.flatnonzero(member)
    old = np.zeros(0, dtype=np.int64)
    chunk = 1 << 20
    while frontier.size:
        everything = np.concatenate([old, frontier])
        produced = []
        for (_, arity), table in zip(alg.signature.ops, alg.arrays):
            if arity == 0:
                continue
            for pos in range(arity):
                # args before pos from `old`, at pos from `frontier`, after from everything
                pools = [old] * pos + [frontier] + [everything] * (arity - pos - 1)
                if any(p.size == 0 for p in pools):
                    continue
                rest = int(np.prod([p.size for p in pools[1:]])) if arity > 1 else 1
                step = max(1, chunk // max(rest, 1))
                for start in range(0, pools[0].size, step):
                    block = [pools[0][start:start + step]] + pools[1:]
                    shaped = [
                        p.reshape((1,) * i + (-1,) + (1,) * (arity - i - 1)) for i, p in enumerate(block)
                    ]
                    produced.append(_apply_coordinatewise(table, n, m, shaped))
        old = everything
        if not produced:
            break
        cand = np.unique(np.concatenate(produced))
        cand = cand[~member[cand]]
        member[cand] = True
        frontier = cand
    return np.flatnonzero(member)


def subalgebra_generate(alg: FiniteAlgebra, seed: Iterable[int]) -> frozenset[int]:
    seed = set(int(x) for x in seed)
    if any(not 0 <= x < alg.size for x in seed):
        raise AlgebraError("seed elements must lie in the universe")
    if not seed and not alg.constants:
        raise AlgebraError("empty seed in a signature without constants generates no subalgebra")
    return frozenset(int(x) for x in power_closure(alg, 1, seed))


def is_subuniverse(alg: FiniteAlgebra, subset: Iterable[int]) -> bool:
    subset = frozenset(subset)
    return bool(subset) and subalgebra_generate(alg, subset) == subset


def induced_subalgebra(alg: FiniteAlgebra, subset: Iterable[int], name=None) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Restrict ``alg`` to a closed subset, renumbered by increasing order.

    Returns the induced algebra and the inclusion map as a tuple.
    """
    inclusion = tuple(sorted(set(subset)))
    if not is_subuniverse(alg, inclusion):
        raise AlgebraError(f"{list(inclusion)} is not a subuniverse of {alg.name}")
    back = {x: i for i, x in enumerate(inclusion)}
    tables = []
    for (_, arity), arr in zip(alg.signature.ops, alg.arrays):
        tables.append(
            tuple(back[int(arr[args])] for args in itertools.product(inclusion, repeat=arity))
        )
    names = tuple(alg.label(x) for x in inclusion) if alg.element_names else None
    sub = FiniteAlgebra(
        len(inclusion), alg.signature, tuple(tables), name=name or f"{alg.name}|{list(inclusion)}", element_names=names
    )
    return sub, inclusion


def product(a: FiniteAlgebra, b: FiniteAlgebra, name=None) -> FiniteAlgebra:
    """Direct product; the pair (x, y) is encoded as x * |b| + y."""
    if a.signature != b.signature:
        raise AlgebraError("factors must share a signature")
    nb = b.size
    tables = []
    for (_, arity), ta, tb in zip(a.signature.ops, a.arrays, b.arrays):
        rows = []
        for args in itertools.product(range(a.size * nb), repeat=arity):
            xs = tuple(x // nb for x in args)
            ys = tuple(x % nb for x in args)
            rows.append(int(ta[xs]) * nb + int(tb[ys]))
        tables.append(tuple(rows))
    names = tuple(f"({a.label(x)},{b.label(y)})" for x in range(a.size) for y in range(nb))
    return FiniteAlgebra(a.size * nb, a.signature, tuple(tables), name=name or f"{a.name}x{b.name}", element_names=names)


def quotient(alg: FiniteAlgebra, theta) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Quotient by a congruence; blocks are numbered by their minimal element."""
    from .partitions import is_compatible

    rep = theta.rep
    if len(rep) != alg.size:
        raise AlgebraError("congruence lives on a different universe")
    if not is_compatible(alg, rep):
        raise AlgebraError("partition is not compatible with the operations")
    reps = sorted(set(rep))
    block = {r: i for i, r in enumerate(reps)}
    projection = tuple(block[rep[x]] for x in range(alg.size))
    tables = []
    for (_, arity), arr in zip(alg.signature.ops, alg.arrays):
        tables.append(
            tuple(projection[int(arr[args])] for args in itertools.product(reps, repeat=arity))
        )
    names = tuple("/".join(alg.label(x) for x in range(alg.size) if rep[x] == r) for r in reps)
    q = FiniteAlgebra(len(reps), alg.signature, tuple(tables), name=f"{alg.name}/~", element_names=names)
    return q, projection


# --- the (alpha, beta)-matrix algebra --------------------------------------


@dataclass(frozen=True)
class MatrixSet:
    """Subalgebra of A^4 generated by (a,a,b,b), (a,b) in alpha, and (c,d,c,d), (c,d) in beta.

    A member (p, q, r, s) is the matrix [[p, q], [r, s]] = [[t(a,c), t(a,d)], [t(b,c), t(b,d)]].
    """

    algebra: FiniteAlgebra
    codes: np.ndarray = field(repr=False, compare=False)

    def columns(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        p, q, r, s = _decode(self.codes, self.algebra.size, 4)
        return p, q, r, s

    def __len__(self):
        return int(self.codes.size)

    def __iter__(self):
        n = self.algebra.size
        for c in self.codes.tolist():
            yield (c // n**3, c // n**2 % n, c // n % n, c % n)

    def __contains__(self, quad) -> bool:
        n = self.algebra.size
        p, q, r, s = quad
        code = ((p * n + q) * n + r) * n + s
        i = np.searchsorted(self.codes, code)
        return bool(i < self.codes.size and self.codes[i] == code)


def matrix_algebra(alg: FiniteAlgebra, alpha, beta) -> MatrixSet:
    n = alg.size
    seeds = set()
    for a, b in alpha.pairs():
        seeds.add(((a * n + a) * n + b) * n + b)
    for c, d in beta.pairs():
        seeds.add(((c * n + d) * n + c) * n + d)
    return MatrixSet(alg, power_closure(alg, 4, seeds))
