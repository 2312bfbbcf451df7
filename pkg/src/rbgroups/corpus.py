"""Bundled groups used by the test suite and the CLI.

Covers every group of order at most 8 up to isomorphism, the cyclic
groups through order 16, and a handful of larger standbys: dihedral of
order 12, A4, S4, the Heisenberg group over Z3, and A5.  Names are
stable and case-insensitive.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InvalidInput
from .groups import FiniteGroup, direct_product, from_cayley_table, from_permutations

__all__ = [
    "CORPUS_NAMES",
    "corpus_group",
    "corpus_names",
    "cyclic",
    "dihedral",
    "symmetric",
    "alternating",
    "quaternion8",
    "heisenberg3",
]


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidInput("cyclic group needs n >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return from_cayley_table(table, name=f"Z{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n, as permutations of vertices."""
    if n < 3:
        raise InvalidInput("dihedral group needs n >= 3")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    return from_permutations([rot, ref], name=f"Dih{n}")


def symmetric(n: int) -> FiniteGroup:
    """S_n generated by the adjacent transpositions, so that for n >= 3 the
    elements 1 and 2 are (0 1) and (1 2)."""
    if n < 1:
        raise InvalidInput("symmetric group needs n >= 1")
    if n == 1:
        return from_cayley_table([[0]], name="S1")
    gens = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    return from_permutations(gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        raise InvalidInput("alternating group needs n >= 3")
    three = (1, 2, 0) + tuple(range(3, n))
    if n == 3:
        gens = [three]
    elif n % 2 == 1:
        full = tuple(range(1, n)) + (0,)
        gens = [full, three]
    else:
        shifted = (0,) + tuple(range(2, n)) + (1,)
        gens = [shifted, three]
    return from_permutations(gens, name=f"A{n}")


def quaternion8() -> FiniteGroup:
    """The quaternion group {±1, ±i, ±j, ±k}."""
    axis_mul = {
        (1, 2): (0, 3), (2, 1): (1, 3),
        (2, 3): (0, 1), (3, 2): (1, 1),
        (3, 1): (0, 2), (1, 3): (1, 2),
    }

    def mul(p, q):
        s1, x1 = p
        s2, x2 = q
        if x1 == 0:
            s3, x3 = 0, x2
        elif x2 == 0:
            s3, x3 = 0, x1
        elif x1 == x2:
            s3, x3 = 1, 0
        else:
            s3, x3 = axis_mul[(x1, x2)]
        return ((s1 + s2 + s3) % 2, x3)

    def idx(p):
        return p[0] * 4 + p[1]

    elems = [(s, x) for s in (0, 1) for x in range(4)]
    table = [[idx(mul(p, q)) for q in elems] for p in elems]
    labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    return from_cayley_table(table, name="Q8", labels=labels)


def heisenberg3() -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z3, as triples (a, b, c) with
    (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab') mod 3."""
    def idx(a, b, c):
        return a * 9 + b * 3 + c

    table = [[0] * 27 for _ in range(27)]
    labels = [""] * 27
    for a in range(3):
        for b in range(3):
            for c in range(3):
                labels[idx(a, b, c)] = f"({a},{b},{c})"
                for a2 in range(3):
                    for b2 in range(3):
                        for c2 in range(3):
                            table[idx(a, b, c)][idx(a2, b2, c2)] = idx(
                                (a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3
                            )
    return from_cayley_table(table, name="Heis3", labels=labels)


def _build(key: str) -> FiniteGroup:
    if key.startswith("z") and key[1:].isdigit():
        return cyclic(int(key[1:]))
    if key == "z2xz2":
        return direct_product(cyclic(2), cyclic(2)).group
    if key == "z4xz2":
        return direct_product(cyclic(4), cyclic(2)).group
    if key == "z2xz2xz2":
        K = direct_product(cyclic(2), cyclic(2)).group
        return direct_product(K, cyclic(2)).group
    if key == "s3":
        return symmetric(3)
    if key == "s4":
        return symmetric(4)
    if key == "d4":
        return dihedral(4)
    if key == "d6":
        return dihedral(6)
    if key == "q8":
        return quaternion8()
    if key == "a4":
        return alternating(4)
    if key == "a5":
        return alternating(5)
    if key == "heis3":
        return heisenberg3()
    raise InvalidInput(f"unknown corpus group {key!r}")


CORPUS_NAMES = (
    [f"Z{n}" for n in range(1, 17)]
    + ["Z2xZ2", "Z4xZ2", "Z2xZ2xZ2", "S3", "D4", "Q8", "D6", "A4", "S4", "Heis3", "A5"]
)

_CANONICAL = {name.lower(): name for name in CORPUS_NAMES}


@lru_cache(maxsize=None)
def _cached(key: str) -> FiniteGroup:
    g = _build(key)
    canonical = _CANONICAL.get(key)
    if canonical and g.name != canonical:
        g.name = canonical
    return g


def corpus_group(name: str) -> FiniteGroup:
    """Look up a bundled group by name (case-insensitive)."""
    key = name.strip().lower()
    if key not in _CANONICAL:
        raise InvalidInput(f"unknown corpus group {name!r}")
    return _cached(key)


def corpus_names() -> list[str]:
    return list(CORPUS_NAMES)
