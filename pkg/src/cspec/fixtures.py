"""Named small algebras used by the test suites and the ``verify`` driver."""

from __future__ import annotations

import itertools
import random

from .algebra import FiniteAlgebra, Signature, product

RING_OPS = (("add", 2), ("neg", 1), ("zero", 0), ("mul", 2))
GROUP_OPS = (("add", 2), ("neg", 1), ("zero", 0))
LATTICE_OPS = (("meet", 2), ("join", 2))


def zn_ring(n: int) -> FiniteAlgebra:
    """Z_n with +, -, 0 and multiplication (no unit in the signature)."""
    return FiniteAlgebra.from_functions(
        n,
        [
            ("add", 2, lambda x, y: x + y),
            ("neg", 1, lambda x: -x),
            ("zero", 0, lambda: 0),
            ("mul", 2, lambda x, y: x * y),
        ],
        name=f"Z{n}ring",
    )


def zn_group(n: int) -> FiniteAlgebra:
    return FiniteAlgebra.from_functions(
        n,
        [("add", 2, lambda x, y: x + y), ("neg", 1, lambda x: -x), ("zero", 0, lambda: 0)],
        name=f"Z{n}group",
    )


def zero_ring(n: int) -> FiniteAlgebra:
    """Z_n with the zero multiplication."""
    return FiniteAlgebra.from_functions(
        n,
        [
            ("add", 2, lambda x, y: x + y),
            ("neg", 1, lambda x: -x),
            ("zero", 0, lambda: 0),
            ("mul", 2, lambda x, y: 0),
        ],
        name=f"Z{n}zero",
    )


def dual_numbers_z2() -> FiniteAlgebra:
    """Z_2[x]/(x^2); the element a + b x is encoded as 2a + b."""
    def mul(u, v):
        a, b, c, d = u >> 1, u & 1, v >> 1, v & 1
        return ((a * c) % 2) << 1 | (a * d + b * c) % 2

    return FiniteAlgebra.from_functions(
        4,
        [("add", 2, lambda u, v: u ^ v), ("neg", 1, lambda u: u), ("zero", 0, lambda: 0), ("mul", 2, mul)],
        name="Z2[x]/x2",
    )


def f4_field() -> FiniteAlgebra:
    """GF(4) = Z_2[w]/(w^2 + w + 1); a + b w encoded as 2b + a."""
    def mul(u, v):
        a, b, c, d = u & 1, u >> 1, v & 1, v >> 1
        # (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, with w^2 = w + 1
        lo = (a * c + b * d) % 2
        hi = (a * d + b * c + b * d) % 2
        return hi << 1 | lo

    return FiniteAlgebra.from_functions(
        4,
        [("add", 2, lambda u, v: u ^ v), ("neg", 1, lambda u: u), ("zero", 0, lambda: 0), ("mul", 2, mul)],
        name="F4",
    )


def s3_group() -> FiniteAlgebra:
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(i, j):
        p, q = perms[i], perms[j]
        return index[tuple(p[q[k]] for k in range(3))]

    def inverse(i):
        p = perms[i]
        inv = [0] * 3
        for k, v in enumerate(p):
            inv[v] = k
        return index[tuple(inv)]

    return FiniteAlgebra.from_functions(
        6,
        [("add", 2, compose), ("neg", 1, inverse), ("zero", 0, lambda: 0)],
        name="S3group",
        element_names=tuple("".join(map(str, p)) for p in perms),
    )


def lattice_from_order(n: int, leq, name: str, element_names=None) -> FiniteAlgebra:
    """Lattice algebra (meet, join) from an order predicate on range(n)."""
    def bound(x, y, up):
        cands = [z for z in range(n) if (leq(x, z) and leq(y, z) if up else leq(z, x) and leq(z, y))]
        for z in cands:
            if all((leq(z, w) if up else leq(w, z)) for w in cands):
                return z
        raise ValueError(f"{name}: {x}, {y} have no {'join' if up else 'meet'}")

    return FiniteAlgebra.from_functions(
        n,
        [("meet", 2, lambda x, y: bound(x, y, False)), ("join", 2, lambda x, y: bound(x, y, True))],
        name=name,
        element_names=element_names,
    )


def _order_from_covers(n, covers):
    up = {x: {x} for x in range(n)}
    changed = True
    while changed:
        changed = False
        for lo, hi in covers:
            for x in range(n):
                if lo in up[x] and not up[hi] <= up[x]:
                    up[x] |= up[hi]
                    changed = True
    return lambda x, y: y in up[x]


def chain_lattice(n: int) -> FiniteAlgebra:
    return lattice_from_order(n, lambda x, y: x <= y, f"L{n}")


def b4_lattice() -> FiniteAlgebra:
    """The four-element Boolean lattice 0 < a, b < 1, encoded as bit sets."""
    return lattice_from_order(4, lambda x, y: x & y == x, "B4lattice", ("0", "a", "b", "1"))


def n5_lattice() -> FiniteAlgebra:
    """0 < a < c < 1 and 0 < b < 1."""
    leq = _order_from_covers(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
    return lattice_from_order(5, leq, "N5", ("0", "a", "b", "c", "1"))


def m3_lattice() -> FiniteAlgebra:
    leq = _order_from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    return lattice_from_order(5, leq, "M3", ("0", "a", "b", "c", "1"))


def b4_plus_top() -> FiniteAlgebra:
    leq = _order_from_covers(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])
    return lattice_from_order(5, leq, "B4+1")


def bottom_plus_b4() -> FiniteAlgebra:
    leq = _order_from_covers(5, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)])
    return lattice_from_order(5, leq, "1+B4")


def trivial_algebra() -> FiniteAlgebra:
    return FiniteAlgebra(1, Signature(RING_OPS), ((0,), (0,), (0,), (0,)), name="trivial")


def z2xz2_ring() -> FiniteAlgebra:
    return product(zn_ring(2), zn_ring(2), name="Z2xZ2ring")


def klein_group() -> FiniteAlgebra:
    return product(zn_group(2), zn_group(2), name="Z2xZ2group")


FIXTURES = {
    "z4ring": lambda: zn_ring(4),
    "z6ring": lambda: zn_ring(6),
    "z4group": lambda: zn_group(4),
    "s3group": s3_group,
    "b4lattice": b4_lattice,
    "l3": lambda: chain_lattice(3),
    "n5": n5_lattice,
    "trivial": trivial_algebra,
}

# the seven algebras every exact suite runs on (n5 is an extra lattice fixture)
CORE_FIXTURES = ("z4ring", "z6ring", "z4group", "s3group", "b4lattice", "l3", "trivial")


def fixture(name: str) -> FiniteAlgebra:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}") from None


def catalogue(max_size: int = 5) -> list[FiniteAlgebra]:
    """Ring, group and lattice algebras with at most ``max_size`` elements."""
    algs = [trivial_algebra()]
    for n in range(2, max_size + 1):
        algs += [zn_ring(n), zn_group(n), chain_lattice(n)]
    algs += [zero_ring(n) for n in range(2, min(max_size, 4) + 1)]
    if max_size >= 4:
        algs += [z2xz2_ring(), f4_field(), dual_numbers_z2(), klein_group(), b4_lattice()]
    if max_size >= 5:
        algs += [n5_lattice(), m3_lattice(), b4_plus_top(), bottom_plus_b4()]
    if max_size >= 6:
        algs += [s3_group()]
    return algs


def random_algebra(rng: random.Random, size: int | None = None, name: str | None = None) -> FiniteAlgebra:
    """Random algebra with one binary operation and possibly one unary operation."""
    size = size if size is not None else rng.randint(2, 4)
    ops = [("f", 2)]
    tables = [tuple(rng.randrange(size) for _ in range(size * size))]
    if rng.random() < 0.5:
        ops.append(("g", 1))
        tables.append(tuple(rng.randrange(size) for _ in range(size)))
    return FiniteAlgebra(size, Signature(tuple(ops)), tuple(tables), name=name or "random")


def random_algebras(seed: int, count: int, max_size: int = 4) -> list[FiniteAlgebra]:
    rng = random.Random(seed)
    return [
        random_algebra(rng, rng.randint(2, max_size), name=f"random[{seed}:{i}]") for i in range(count)
    ]
