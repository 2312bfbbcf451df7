"""Complete censuses of Rota-Baxter operators, by two independent routes.

`brute_force_enumerate` filters every map fixing the identity through
the defining identity, vectorized with numpy so order 8 stays cheap.
`graph_enumerate` takes the structural route: a valid weight-+1 operator
B is the same thing as a subgroup of G x G of order |G| meeting the
diagonal trivially, via the pairing g -> (gB(g), B(g)).

Why the correspondence is exact.  Encoding: the pairing map is a
homomorphism from the twisted group of B into G x G (first coordinates
multiply by the twisted product, second coordinates because B is
multiplicative on it), injective since the first coordinates alone are a
bijection of G; a nontrivial diagonal pair (x, x) would decode to an
element g = x x^-1 = e with B(e) = x != e.  Decoding: given such a
subgroup H, the difference map (x, y) -> x y^-1 is injective on H
(a collision (x, y), (x', y') gives (x'^-1 x, y'^-1 y) in H and in the
diagonal), hence bijective by the order count, so B(x y^-1) = y is a
well-defined total map; for pairs (x, y), (x', y') in H with g = x y^-1
and h = x' y'^-1, the product (x, y)(x', y') = (x x', y y') lies in H
and decodes to B(x x' (y y')^-1) = y y', and x x' (y y')^-1 expands to
g B(g) h B(g)^-1, which is exactly the defining identity for B.  The two
directions are mutually inverse, so the census of subgroups is the
census of operators, with no duplicates on either side.

Subgroups of G x G are walked through their factor data (projections,
the two slice kernels, and the identifying isomorphism between the
quotients), so the product group is never materialized; this keeps A5
tractable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInput, OrderCapExceeded, StructureViolation
from .groups import (
    FiniteGroup,
    GroupMap,
    Subgroup,
    all_subgroups,
    automorphisms,
    exact_factorizations,
    is_normal,
    is_simple,
    isomorphisms_all,
    quotient,
)
from .operators import (
    RBOperator,
    elementary,
    image,
    is_splitting,
    kernel,
    tilde,
    conjugate,
    verify,
)

DEFAULT_BRUTE_CAP = 8

__all__ = [
    "DEFAULT_BRUTE_CAP",
    "Census",
    "OrbitClass",
    "ElementaryVerdict",
    "SplittingReport",
    "SimpleCheck",
    "brute_force_enumerate",
    "graph_enumerate",
    "graph_of_operator",
    "classify",
    "is_rb_elementary",
    "splitting_report",
    "simple_group_check",
]


@dataclass(frozen=True)
class OrbitClass:
    """One orbit under automorphism conjugation and the tilde involution."""

    representative: tuple[int, ...]
    members: tuple[int, ...]


@dataclass(frozen=True)
class Census:
    group: FiniteGroup
    method: str
    operators: tuple[RBOperator, ...]
    weight: int = 1
    classes: Optional[tuple[OrbitClass, ...]] = None

    def __len__(self) -> int:
        return len(self.operators)

    def image_tuples(self) -> list[tuple[int, ...]]:
        return [op.images for op in self.operators]


def brute_force_enumerate(G: FiniteGroup, cap: int = DEFAULT_BRUTE_CAP,
                          weight: int = 1) -> Census:
    """Filter all |G|^(|G|-1) maps fixing the identity through the identity.

    Fixing B(e) = e loses nothing: substituting g = h = e into either
    weight's identity forces the image of e to be idempotent, hence the
    identity.  Candidates are filtered pair by pair with numpy gathers.
    """
    if G.order > cap:
        raise OrderCapExceeded(
            f"brute force capped at order {cap}, group has order {G.order}"
        )
    if weight not in (1, -1):
        raise InvalidInput(f"weight must be +1 or -1, got {weight}")
    n = G.order
    e = G.identity
    t = G.np_table().astype(np.int64)
    inv = np.array(G.inverses, dtype=np.int64)

    free = [g for g in range(n) if g != e]
    m = n ** len(free)
    d = np.empty((m, n), dtype=np.int64)
    d[:, e] = e
    idx = np.arange(m, dtype=np.int64)
    for j, g in enumerate(free):
        div = n ** (len(free) - 1 - j)
        d[:, g] = (idx // div) % n

    for g in free:
        if d.shape[0] == 0:
            break
        for h in free:
            bg = d[:, g]
            bh = d[:, h]
            lhs = t[bg, bh]
            if weight == 1:
                arg = t[t[t[g, bg], h], inv[bg]]
            else:
                arg = t[t[t[bg, h], inv[bg]], g]
            rhs = np.take_along_axis(d, arg[:, None], axis=1)[:, 0]
            d = d[lhs == rhs]
            if d.shape[0] == 0:
                break

    rows = sorted(tuple(int(x) for x in row) for row in d)
    ops = []
    for row in rows:
        op = RBOperator(G, row, weight=weight)
        v = verify(op)
        if not v:
            raise StructureViolation(
                f"brute-force survivor fails verification at {v.witness}"
            )
        ops.append(op)
    return Census(G, "brute", tuple(ops), weight=weight)


def graph_of_operator(op: RBOperator) -> frozenset[tuple[int, int]]:
    """The subgroup of G x G encoding a valid operator: {(gB(g), B(g))}."""
    if not verify(op):
        raise InvalidInput(f"operator is not valid: witness {op.verified}")
    G = op.group
    return frozenset(
        (G.table[g][op.images[g]], op.images[g]) for g in G.elements()
    )


def _normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [s for s in all_subgroups(G) if is_normal(s)]


def graph_enumerate(G: FiniteGroup, cap: int = 2048) -> Census:
    """Enumerate operators as order-|G| subgroups of G x G avoiding the
    diagonal, walking subgroups of the square through their factor data.

    Each subgroup of G x G is determined by its two projections A and C,
    the slice kernels inside them, and an isomorphism between the two
    quotients; distinct isomorphisms give distinct subgroups, so nothing
    is deduplicated.  A candidate survives when its order is |G| and no
    nonidentity element pairs with itself.
    """
    if G.order > cap:
        raise OrderCapExceeded(f"graph enumeration capped at order {cap}")
    n = G.order
    e = G.identity
    t, inv = G.table, G.inverses
    subs = all_subgroups(G)
    by_order: dict[int, list[Subgroup]] = {}
    for s in subs:
        by_order.setdefault(s.order, []).append(s)

    found: list[tuple[int, ...]] = []
    for A in subs:
        packA = A.as_group()
        normalsA = _normal_subgroups(packA.group)
        for Bn in normalsA:
            if (n % Bn.order) != 0:
                continue
            c_order = n // Bn.order
            quot_order = A.order // Bn.order
            QA, projA = quotient(packA.group, Bn)
            for C in by_order.get(c_order, []):
                if C.order % quot_order != 0:
                    continue
                d_order = C.order // quot_order
                packC = C.as_group()
                for Dn in _normal_subgroups(packC.group):
                    if Dn.order != d_order:
                        continue
                    QC, projC = quotient(packC.group, Dn)
                    fibers: dict[int, list[int]] = {}
                    for c_local in packC.group.elements():
                        fibers.setdefault(projC(c_local), []).append(c_local)
                    common = sorted(A.as_set() & C.as_set())
                    for phi in isomorphisms_all(QA, QC):
                        ok = True
                        for x in common:
                            if x == e:
                                continue
                            qa = projA(packA.from_parent[x])
                            qc = projC(packC.from_parent[x])
                            if phi(qa) == qc:
                                ok = False
                                break
                        if not ok:
                            continue
                        images = [-1] * n
                        for a_local in packA.group.elements():
                            x = packA.to_parent[a_local]
                            qc = phi(projA(a_local))
                            for c_local in fibers[qc]:
                                y = packC.to_parent[c_local]
                                g = t[x][inv[y]]
                                if images[g] != -1:
                                    raise StructureViolation(
                                        "difference map not injective despite "
                                        "trivial diagonal"
                                    )
                                images[g] = y
                        if any(v < 0 for v in images):
                            raise StructureViolation(
                                "decoded map is not total"
                            )
                        found.append(tuple(images))

    found.sort()
    ops = []
    for row in found:
        op = RBOperator(G, row, weight=1)
        v = verify(op)
        if not v:
            raise StructureViolation(
                f"decoded subgroup fails verification at {v.witness}"
            )
        ops.append(op)
    return Census(G, "graph", tuple(ops))


def classify(census: Census) -> Census:
    """Partition a census into orbits under conjugation and tilde.

    The orbit representative is the lexicographically least image array;
    orbits are sorted by representative.
    """
    G = census.group
    auts = automorphisms(G)
    index = {op.images: i for i, op in enumerate(census.operators)}
    seen = [False] * len(census.operators)
    orbits = []
    for start, op in enumerate(census.operators):
        if seen[start]:
            continue
        frontier = [op]
        members = {start}
        seen[start] = True
        while frontier:
            cur = frontier.pop()
            moves = [tilde(cur)]
            moves.extend(conjugate(cur, phi) for phi in auts)
            for nxt in moves:
                j = index.get(nxt.images)
                if j is None:
                    raise StructureViolation(
                        "census is not closed under conjugation and tilde"
                    )
                if not seen[j]:
                    seen[j] = True
                    members.add(j)
                    frontier.append(census.operators[j])
        rep = min(census.operators[j].images for j in members)
        orbits.append(OrbitClass(rep, tuple(sorted(members))))
    orbits.sort(key=lambda o: o.representative)
    return Census(G, census.method, census.operators, weight=census.weight,
                  classes=tuple(orbits))


@dataclass(frozen=True)
class ElementaryVerdict:
    """Whether every operator on the group is one of the two elementary maps.

    Reports both the raw operator count and the orbit count, since the
    two disagree already on small cyclic groups.
    """

    elementary: bool
    total: int
    orbit_count: int
    non_elementary: tuple[int, ...]


def is_rb_elementary(G: FiniteGroup, census: Optional[Census] = None) -> ElementaryVerdict:
    if census is None:
        census = graph_enumerate(G)
    if census.classes is None:
        census = classify(census)
    allowed = {elementary(G, "b0").images, elementary(G, "b_minus1").images}
    bad = tuple(
        i for i, op in enumerate(census.operators) if op.images not in allowed
    )
    return ElementaryVerdict(
        elementary=not bad,
        total=len(census.operators),
        orbit_count=len(census.classes),
        non_elementary=bad,
    )


@dataclass(frozen=True)
class SplittingReport:
    """Census indices of splitting operators, each with its factorization."""

    splitting: dict
    non_splitting: tuple[int, ...]


def splitting_report(census: Census) -> SplittingReport:
    """Match each splitting operator to its (kernel, image) factorization.

    Each pair is checked against the full exact-factorization list of the
    group; a miss is a bug, since a splitting operator's kernel and image
    always factor the group exactly.
    """
    G = census.group
    pairs = {
        (H.elements, L.elements) for H, L in exact_factorizations(G)
    }
    out = {}
    rest = []
    for i, op in enumerate(census.operators):
        sp = is_splitting(op)
        if sp:
            key = (sp.kernel.elements, sp.image.elements)
            if key not in pairs:
                raise StructureViolation(
                    f"splitting factorization {key} missing from the "
                    "exact-factorization list"
                )
            out[i] = key
        else:
            rest.append(i)
    return SplittingReport(splitting=out, non_splitting=tuple(rest))


@dataclass(frozen=True)
class SimpleCheck:
    """Census-level facts that hold for finite simple groups."""

    census_size: int
    trivial_kernel_all_inversion: bool
    non_elementary_all_splitting: bool
    factorizations_covered: bool


def simple_group_check(G: FiniteGroup, census: Optional[Census] = None) -> SimpleCheck:
    """For a simple group: trivial-kernel operators must be inversion, and
    non-elementary operators must split along an exact factorization."""
    if not is_simple(G):
        raise InvalidInput("check applies to simple groups only")
    if census is None:
        census = graph_enumerate(G)
    inv_images = tuple(G.inverses)
    b0_images = (G.identity,) * G.order
    trivial_ok = True
    split_ok = True
    pairs = {(H.elements, L.elements) for H, L in exact_factorizations(G)}
    covered = True
    for op in census.operators:
        if kernel(op).order == 1 and op.images != inv_images:
            trivial_ok = False
        if op.images in (inv_images, b0_images):
            continue
        sp = is_splitting(op)
        if not sp:
            split_ok = False
            continue
        if (sp.kernel.elements, sp.image.elements) not in pairs:
            covered = False
    return SimpleCheck(
        census_size=len(census.operators),
        trivial_kernel_all_inversion=trivial_ok,
        non_elementary_all_splitting=split_ok,
        factorizations_covered=covered,
    )
