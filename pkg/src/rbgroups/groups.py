"""Finite groups as dense multiplication tables over 0-based element ids.

Every group in this library is a `FiniteGroup`: a fully validated Cayley
table together with the located identity and the inverse of each element.
All constructors validate completely (Latin property, identity,
associativity), so downstream algorithms never re-check the axioms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    ActionNotHomomorphism,
    InvalidInput,
    NoIdentity,
    NotAssociative,
    NotHomomorphism,
    NotLatinSquare,
    NotNormal,
    OrderCapExceeded,
)

DEFAULT_ORDER_CAP = 2048

__all__ = [
    "DEFAULT_ORDER_CAP",
    "FiniteGroup",
    "GroupMap",
    "Subgroup",
    "PackedSubgroup",
    "DirectProduct",
    "SemidirectProduct",
    "WreathProduct",
    "from_cayley_table",
    "from_permutations",
    "opposite_group",
    "direct_product",
    "direct_power",
    "semidirect_product",
    "wreath_product",
    "subgroup_generated",
    "all_subgroups",
    "center",
    "is_normal",
    "normal_closure",
    "commutator_subgroup",
    "lower_central_series",
    "quotient",
    "is_simple",
    "automorphisms",
    "isomorphisms_all",
    "is_isomorphic",
    "all_homomorphisms",
    "fixed_point_free",
    "exact_factorizations",
]


# ---------------------------------------------------------------------------
# table validation


def _validate_table(table: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    """Check the group axioms on a raw table; return (identity, inverses)."""
    n = len(table)
    if n == 0:
        raise NotLatinSquare("empty table")
    rows = []
    for i, row in enumerate(table):
        row = tuple(int(x) for x in row)
        if len(row) != n:
            raise NotLatinSquare(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise NotLatinSquare(f"row {i} contains out-of-range entry {x}")
        rows.append(row)

    full = tuple(range(n))
    for i, row in enumerate(rows):
        if tuple(sorted(row)) != full:
            raise NotLatinSquare(f"row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        col = sorted(rows[i][j] for i in range(n))
        if tuple(col) != full:
            raise NotLatinSquare(f"column {j} is not a permutation of 0..{n - 1}")

    identity = -1
    for e in range(n):
        if rows[e] == full and all(rows[g][e] == g for g in range(n)):
            identity = e
            break
    if identity < 0:
        raise NoIdentity("no two-sided identity element")

    _check_associative(rows, n)

    inverses = [0] * n
    for g in range(n):
        x = rows[g].index(identity)
        if rows[x][g] != identity:
            raise NotAssociative(f"one-sided inverse at element {g}")
        inverses[g] = x
    return identity, tuple(inverses)


def _check_associative(rows: Sequence[tuple[int, ...]], n: int) -> None:
    if n <= 32:
        for a in range(n):
            ra = rows[a]
            for b in range(n):
                ab = ra[b]
                rb = rows[b]
                rab = rows[ab]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
        return
    t = np.array(rows, dtype=np.int32)
    for a in range(n):
        lhs = t[t[a], :]
        rhs = t[a][t]
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)
            b, c = int(bad[0][0]), int(bad[0][1])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")


class FiniteGroup:
    """A finite group on elements 0..order-1 with a dense product table.

    Instances are immutable after construction and safe to share.  Build
    them with `from_cayley_table`, `from_permutations` or one of the
    product constructors rather than calling __init__ on raw data.
    """

    __slots__ = (
        "order",
        "table",
        "identity",
        "inverses",
        "name",
        "labels",
        "_np",
        "_orders",
        "_abelian",
        "_center",
        "_derived",
    )

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        identity: int,
        inverses: Sequence[int],
        name: str = "",
        labels: Optional[Sequence[str]] = None,
    ):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.identity = identity
        self.inverses = tuple(inverses)
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        self._np = None
        self._orders = None
        self._abelian = None
        self._center = None
        self._derived = None

    def __repr__(self):
        tag = self.name or "unnamed"
        return f"FiniteGroup({tag}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, by: int) -> int:
        """Return by * g * by^-1."""
        t = self.table
        return t[t[by][g]][self.inverses[by]]

    def comm(self, a: int, b: int) -> int:
        """Return the commutator a^-1 b^-1 a b."""
        t = self.table
        return t[t[t[self.inverses[a]][self.inverses[b]]][a]][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        acc = self.identity
        row = a
        while k:
            if k & 1:
                acc = self.table[acc][row]
            row = self.table[row][row]
            k >>= 1
        return acc

    def prod(self, elems: Iterable[int]) -> int:
        acc = self.identity
        for x in elems:
            acc = self.table[acc][x]
        return acc

    def element_order(self, a: int) -> int:
        return self.element_orders()[a]

    def element_orders(self) -> tuple[int, ...]:
        if self._orders is None:
            out = []
            for a in range(self.order):
                k, x = 1, a
                while x != self.identity:
                    x = self.table[x][a]
                    k += 1
                out.append(k)
            self._orders = tuple(out)
        return self._orders

    def order_profile(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_orders()))

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            t = self.table
            self._abelian = all(
                t[a][b] == t[b][a]
                for a in range(self.order)
                for b in range(a + 1, self.order)
            )
        return self._abelian

    def np_table(self) -> np.ndarray:
        if self._np is None:
            self._np = np.array(self.table, dtype=np.int32)
        return self._np

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)


def from_cayley_table(
    table: Sequence[Sequence[int]],
    name: str = "",
    labels: Optional[Sequence[str]] = None,
) -> FiniteGroup:
    """Build a group from a full multiplication table, validating the axioms."""
    identity, inverses = _validate_table(table)
    return FiniteGroup(table, identity, inverses, name=name, labels=labels)


def _perm_cycles(p: Sequence[int]) -> str:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) if parts else "()"


def from_permutations(
    gens: Sequence[Sequence[int]],
    name: str = "",
    cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    """Close a set of permutations under composition and build the group.

    Permutations are tuples p with p[i] = image of i; composition applies
    the right factor first.  Elements are ordered by breadth-first
    discovery from the identity, so the ordering is deterministic in the
    generator order.
    """
    if not gens:
        raise InvalidInput("need at least one permutation")
    k = len(gens[0])
    gtuples = []
    for idx, p in enumerate(gens):
        p = tuple(int(x) for x in p)
        if len(p) != k or sorted(p) != list(range(k)):
            raise InvalidInput(f"generator {idx} is not a permutation of 0..{k - 1}")
        gtuples.append(p)

    ident = tuple(range(k))
    index = {ident: 0}
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gtuples:
                q = tuple(p[g[i]] for i in range(k))
                if q not in index:
                    if len(elems) >= cap:
                        raise OrderCapExceeded(
                            f"permutation closure exceeds cap {cap}"
                        )
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt

    n = len(elems)
    table = [[0] * n for _ in range(n)]
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i][j] = index[tuple(p[q[x]] for x in range(k))]
    labels = [_perm_cycles(p) for p in elems]
    identity, inverses = _validate_table(table)
    return FiniteGroup(table, identity, inverses, name=name, labels=labels)


def opposite_group(G: FiniteGroup) -> FiniteGroup:
    """The same elements with the reversed product a*b := G.mul(b, a)."""
    table = [[G.table[b][a] for b in G.elements()] for a in G.elements()]
    return FiniteGroup(table, G.identity, G.inverses,
                       name=f"{G.name}^op" if G.name else "", labels=G.labels)


# ---------------------------------------------------------------------------
# maps between groups


@dataclass(frozen=True, eq=False)
class GroupMap:
    """A total map between two groups, with optional verified flags."""

    domain: FiniteGroup
    codomain: FiniteGroup
    images: tuple[int, ...]
    homomorphism: bool = False
    bijective: bool = False

    def __post_init__(self):
        if len(self.images) != self.domain.order:
            raise InvalidInput("image list length does not match the domain")
        for x in self.images:
            if not 0 <= x < self.codomain.order:
                raise InvalidInput(f"image {x} out of range")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def __eq__(self, other):
        return (
            isinstance(other, GroupMap)
            and self.domain is other.domain
            and self.codomain is other.codomain
            and self.images == other.images
        )

    def __hash__(self):
        return hash((id(self.domain), id(self.codomain), self.images))

    @staticmethod
    def plain(domain: FiniteGroup, codomain: FiniteGroup,
              images: Sequence[int]) -> "GroupMap":
        return GroupMap(domain, codomain, tuple(images))

    @staticmethod
    def hom(domain: FiniteGroup, codomain: FiniteGroup,
            images: Sequence[int]) -> "GroupMap":
        """Build a map and verify it is a homomorphism."""
        m = GroupMap(domain, codomain, tuple(images), homomorphism=False)
        w = m.hom_defect()
        if w is not None:
            a, b = w
            raise NotHomomorphism(f"not a homomorphism at pair ({a}, {b})")
        bij = len(set(m.images)) == codomain.order and domain.order == codomain.order
        return GroupMap(domain, codomain, m.images, homomorphism=True, bijective=bij)

    @staticmethod
    def automorphism(G: FiniteGroup, images: Sequence[int]) -> "GroupMap":
        m = GroupMap.hom(G, G, images)
        if not m.bijective:
            raise InvalidInput("homomorphism is not bijective")
        return m

    def hom_defect(self) -> Optional[tuple[int, int]]:
        """First pair where f(ab) != f(a)f(b), or None."""
        dt, ct, f = self.domain.table, self.codomain.table, self.images
        for a in self.domain.elements():
            fa = f[a]
            for b in self.domain.elements():
                if f[dt[a][b]] != ct[fa][f[b]]:
                    return (a, b)
        return None

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other (apply `other` first)."""
        if other.codomain is not self.domain:
            raise InvalidInput("composition domains do not line up")
        images = tuple(self.images[other.images[g]] for g in other.domain.elements())
        return GroupMap(
            other.domain,
            self.codomain,
            images,
            homomorphism=self.homomorphism and other.homomorphism,
            bijective=self.bijective and other.bijective,
        )

    def inverse(self) -> "GroupMap":
        if not self.bijective:
            raise InvalidInput("only bijective maps can be inverted")
        inv = [0] * self.codomain.order
        for g, fg in enumerate(self.images):
            inv[fg] = g
        return GroupMap(self.codomain, self.domain, tuple(inv),
                        homomorphism=self.homomorphism, bijective=True)

    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)


def fixed_point_free(phi: GroupMap) -> bool:
    """True when an automorphism fixes only the identity."""
    if phi.domain is not phi.codomain:
        raise InvalidInput("fixed points need an endomap")
    e = phi.domain.identity
    return all(phi.images[g] != g for g in phi.domain.elements() if g != e)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class PackedSubgroup:
    """A subgroup repacked as a standalone group, with id translations."""

    group: FiniteGroup
    to_parent: tuple[int, ...]
    from_parent: dict


class Subgroup:
    """A validated subgroup of a parent group, stored as sorted element ids."""

    __slots__ = ("parent", "elements", "_set", "_packed")

    def __init__(self, parent: FiniteGroup, elements: Iterable[int]):
        elems = tuple(sorted(set(int(x) for x in elements)))
        for x in elems:
            if not 0 <= x < parent.order:
                raise InvalidInput(f"element {x} out of range")
        eset = frozenset(elems)
        if parent.identity not in eset:
            raise InvalidInput("subgroup must contain the identity")
        for a in elems:
            if parent.inverses[a] not in eset:
                raise InvalidInput(f"subgroup not closed under inverse at {a}")
            row = parent.table[a]
            for b in elems:
                if row[b] not in eset:
                    raise InvalidInput(f"subgroup not closed at ({a}, {b})")
        self.parent = parent
        self.elements = elems
        self._set = eset
        self._packed = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self._set

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __repr__(self):
        return f"Subgroup(order={self.order}, elements={self.elements})"

    def as_set(self) -> frozenset[int]:
        return self._set

    def is_whole_group(self) -> bool:
        return self.order == self.parent.order

    def as_group(self) -> PackedSubgroup:
        """Repack as a standalone FiniteGroup on 0..order-1."""
        if self._packed is None:
            to_parent = self.elements
            from_parent = {g: i for i, g in enumerate(to_parent)}
            table = [
                [from_parent[self.parent.table[a][b]] for b in to_parent]
                for a in to_parent
            ]
            labels = [self.parent.label(g) for g in to_parent]
            grp = from_cayley_table(table, labels=labels)
            self._packed = PackedSubgroup(grp, to_parent, from_parent)
        return self._packed


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """The smallest subgroup containing the given elements."""
    return Subgroup(G, _closure(G, tuple(gens)))


def _closure(G: FiniteGroup, gens: Sequence[int]) -> frozenset[int]:
    known = {G.identity}
    frontier = [G.identity]
    table = G.table
    while frontier:
        nxt = []
        for x in frontier:
            row = table[x]
            for g in gens:
                y = row[g]
                if y not in known:
                    known.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(known)


def all_subgroups(G: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> list[Subgroup]:
    """Every subgroup of G, sorted by (order, element tuple).

    Starts from the cyclic subgroups and repeatedly joins known subgroups
    with single outside elements until no new subgroup appears.  Every
    subgroup is a join of cyclic subgroups, so the sweep is complete; in
    particular perfect subgroups are found, which a cyclic-extension-only
    sweep would miss.
    """
    if G.order > cap:
        raise OrderCapExceeded(f"subgroup sweep capped at order {cap}")
    seen: dict[frozenset[int], tuple[int, ...]] = {}
    queue: list[tuple[frozenset[int], tuple[int, ...]]] = []

    def add(elems: frozenset[int], gens: tuple[int, ...]) -> None:
        if elems not in seen:
            seen[elems] = gens
            queue.append((elems, gens))

    add(frozenset({G.identity}), ())
    for g in G.elements():
        add(_closure(G, (g,)), (g,))

    i = 0
    while i < len(queue):
        elems, gens = queue[i]
        i += 1
        if len(elems) == G.order:
            continue
        for g in G.elements():
            if g not in elems:
                bigger = _closure(G, gens + (g,))
                add(bigger, gens + (g,))

    subs = [Subgroup(G, elems) for elems in seen]
    subs.sort(key=lambda s: (s.order, s.elements))
    return subs


def center(G: FiniteGroup) -> Subgroup:
    if G._center is None:
        t = G.table
        zs = [
            g
            for g in G.elements()
            if all(t[g][h] == t[h][g] for h in G.elements())
        ]
        G._center = Subgroup(G, zs)
    return G._center


def is_normal(S: Subgroup) -> bool:
    G = S.parent
    return all(G.conj(s, g) in S for g in G.elements() for s in S.elements)


def _is_normal_within(G: FiniteGroup, inner: Subgroup, outer: Subgroup) -> bool:
    """Whether `inner` is a normal subgroup of `outer` (both inside G)."""
    return all(G.conj(s, g) in inner for g in outer.elements for s in inner.elements)


def normal_closure(G: FiniteGroup, g: int) -> Subgroup:
    """Smallest normal subgroup containing g: generated by its conjugacy class."""
    cls = sorted({G.conj(g, x) for x in G.elements()})
    return subgroup_generated(G, cls)


def commutator_subgroup(G: FiniteGroup, A: Optional[Subgroup] = None,
                        B: Optional[Subgroup] = None) -> Subgroup:
    """Subgroup generated by all commutators [a, b], a in A, b in B."""
    a_elems = A.elements if A is not None else tuple(G.elements())
    b_elems = B.elements if B is not None else tuple(G.elements())
    gens = sorted({G.comm(a, b) for a in a_elems for b in b_elems})
    return subgroup_generated(G, gens)


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    if G._derived is None:
        G._derived = commutator_subgroup(G)
    return G._derived


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    """The chain G = G_1 >= G_2 >= ... with G_{k+1} = [G, G_k], cut at the
    first repeated term.  Nilpotent groups end at the trivial subgroup."""
    whole = Subgroup(G, G.elements())
    chain = [whole]
    while True:
        nxt = commutator_subgroup(G, whole, chain[-1])
        if nxt.elements == chain[-1].elements:
            return chain
        chain.append(nxt)


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupMap]:
    """The quotient G/N with its projection; N must be normal."""
    if N.parent is not G:
        raise InvalidInput("subgroup belongs to a different group")
    if not is_normal(N):
        raise NotNormal(f"subgroup {N.elements} is not normal")
    coset_key = {}
    for g in G.elements():
        coset_key[g] = min(G.table[g][u] for u in N.elements)
    reps = sorted(set(coset_key.values()))
    rep_index = {r: i for i, r in enumerate(reps)}
    coset_of = [rep_index[coset_key[g]] for g in G.elements()]
    m = len(reps)
    table = [[coset_of[G.table[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    Q = from_cayley_table(table, name=f"{G.name}/N" if G.name else "")
    proj = GroupMap.hom(G, Q, coset_of)
    return Q, proj


def is_simple(G: FiniteGroup) -> bool:
    """True when G is nontrivial and has no proper nontrivial normal subgroup."""
    if G.order == 1:
        return False
    e = G.identity
    for g in G.elements():
        if g == e:
            continue
        if normal_closure(G, g).order != G.order:
            return False
    return True


# ---------------------------------------------------------------------------
# products


def _mixed_radix_maps(orders: Sequence[int]):
    """Encode/decode tuples over the given factor orders, first factor most
    significant."""
    n = len(orders)

    def encode(parts: Sequence[int]) -> int:
        acc = 0
        for i in range(n):
            acc = acc * orders[i] + parts[i]
        return acc

    def decode(x: int) -> tuple[int, ...]:
        parts = [0] * n
        for i in range(n - 1, -1, -1):
            parts[i] = x % orders[i]
            x //= orders[i]
        return tuple(parts)

    return encode, decode


class DirectProduct:
    """A direct product with componentwise coding and the canonical maps."""

    def __init__(self, factors: Sequence[FiniteGroup], cap: int = DEFAULT_ORDER_CAP,
                 name: str = ""):
        orders = [F.order for F in factors]
        total = 1
        for o in orders:
            total *= o
            if total > cap:
                raise OrderCapExceeded(f"product order exceeds cap {cap}")
        self.factors = tuple(factors)
        self.encode, self.decode = _mixed_radix_maps(orders)
        table = [[0] * total for _ in range(total)]
        dec = [self.decode(x) for x in range(total)]
        for a in range(total):
            pa = dec[a]
            for b in range(total):
                pb = dec[b]
                table[a][b] = self.encode(
                    tuple(F.table[pa[i]][pb[i]] for i, F in enumerate(self.factors))
                )
        if not name:
            parts = [F.name or "?" for F in factors]
            name = "x".join(parts) if all(F.name for F in factors) else ""
        self.group = from_cayley_table(table, name=name)
        self.injections = tuple(self._injection(i) for i in range(len(factors)))
        self.projections = tuple(self._projection(i) for i in range(len(factors)))

    def _injection(self, i: int) -> GroupMap:
        idbase = [F.identity for F in self.factors]
        images = []
        for g in self.factors[i].elements():
            parts = list(idbase)
            parts[i] = g
            images.append(self.encode(parts))
        return GroupMap.hom(self.factors[i], self.group, images)

    def _projection(self, i: int) -> GroupMap:
        images = [self.decode(x)[i] for x in self.group.elements()]
        return GroupMap.hom(self.group, self.factors[i], images)


def direct_product(G: FiniteGroup, H: FiniteGroup,
                   cap: int = DEFAULT_ORDER_CAP) -> DirectProduct:
    return DirectProduct((G, H), cap=cap)


def direct_power(G: FiniteGroup, n: int, cap: int = DEFAULT_ORDER_CAP) -> DirectProduct:
    if n < 1:
        raise InvalidInput("direct power needs n >= 1")
    name = f"{G.name}^{n}" if G.name else ""
    return DirectProduct((G,) * n, cap=cap, name=name)


class SemidirectProduct:
    """H x| L for an action of L on H by automorphisms.

    Elements are pairs (h, l) with product (h1, l1)(h2, l2) =
    (h1 * act(l1)(h2), l1 l2); H embeds as a normal subgroup.
    """

    def __init__(self, H: FiniteGroup, L: FiniteGroup,
                 action: Sequence[Sequence[int]], cap: int = DEFAULT_ORDER_CAP,
                 name: str = ""):
        if len(action) != L.order:
            raise ActionNotHomomorphism("need one automorphism per acting element")
        auts = []
        for l, images in enumerate(action):
            try:
                auts.append(GroupMap.automorphism(H, images))
            except (InvalidInput, NotHomomorphism) as exc:
                raise ActionNotHomomorphism(
                    f"action of element {l} is not an automorphism: {exc}"
                ) from exc
        for l1 in L.elements():
            for l2 in L.elements():
                lhs = auts[L.table[l1][l2]]
                rhs = auts[l1].compose(auts[l2])
                if lhs.images != rhs.images:
                    raise ActionNotHomomorphism(
                        f"action is not multiplicative at ({l1}, {l2})"
                    )
        total = H.order * L.order
        if total > cap:
            raise OrderCapExceeded(f"product order exceeds cap {cap}")
        self.H, self.L = H, L
        self.action = tuple(auts)

        def encode(h: int, l: int) -> int:
            return h * L.order + l

        def decode(x: int) -> tuple[int, int]:
            return divmod(x, L.order)

        self.encode, self.decode = encode, decode
        table = [[0] * total for _ in range(total)]
        for h1 in H.elements():
            for l1 in L.elements():
                a = encode(h1, l1)
                act = auts[l1].images
                for h2 in H.elements():
                    hpart = H.table[h1][act[h2]]
                    row_l = L.table[l1]
                    for l2 in L.elements():
                        table[a][encode(h2, l2)] = encode(hpart, row_l[l2])
        self.group = from_cayley_table(table, name=name)


def semidirect_product(H: FiniteGroup, L: FiniteGroup,
                       action: Sequence[Sequence[int]],
                       cap: int = DEFAULT_ORDER_CAP,
                       name: str = "") -> SemidirectProduct:
    return SemidirectProduct(H, L, action, cap=cap, name=name)


class WreathProduct:
    """H wr L: pairs (l, f) with f: L -> H, product twisting f by translation.

    The product is (l, f)(l', f') = (l l', x -> f(l' x) * f'(x)), so the
    base group of functions is normal and L permutes it by left shifts.
    """

    def __init__(self, H: FiniteGroup, L: FiniteGroup,
                 cap: int = DEFAULT_ORDER_CAP, name: str = ""):
        base = H.order ** L.order
        total = base * L.order
        if total > cap:
            raise OrderCapExceeded(f"wreath product order {total} exceeds cap {cap}")
        self.H, self.L = H, L
        self.base_size = base
        fun_encode, fun_decode = _mixed_radix_maps([H.order] * L.order)
        self.fun_encode, self.fun_decode = fun_encode, fun_decode

        def encode(l: int, f: Sequence[int]) -> int:
            return l * base + fun_encode(f)

        def decode(x: int) -> tuple[int, tuple[int, ...]]:
            l, fidx = divmod(x, base)
            return l, fun_decode(fidx)

        self.encode, self.decode = encode, decode
        funs = [fun_decode(i) for i in range(base)]
        table = [[0] * total for _ in range(total)]
        for l1 in range(L.order):
            for i1, f1 in enumerate(funs):
                a = l1 * base + i1
                for l2 in range(L.order):
                    shifted = tuple(f1[L.table[l2][x]] for x in range(L.order))
                    lpart = L.table[l1][l2]
                    for i2, f2 in enumerate(funs):
                        prod = tuple(
                            H.table[shifted[x]][f2[x]] for x in range(L.order)
                        )
                        table[a][l2 * base + i2] = lpart * base + fun_encode(prod)
        self.group = from_cayley_table(table, name=name)


def wreath_product(H: FiniteGroup, L: FiniteGroup,
                   cap: int = DEFAULT_ORDER_CAP, name: str = "") -> WreathProduct:
    return WreathProduct(H, L, cap=cap, name=name)


# ---------------------------------------------------------------------------
# homomorphism search


def generating_sequence(G: FiniteGroup) -> tuple[int, ...]:
    """A short generating sequence found by a greedy sweep in id order."""
    gens: list[int] = []
    have = frozenset({G.identity})
    for g in G.elements():
        if g not in have:
            gens.append(g)
            have = _closure(G, tuple(gens))
            if len(have) == G.order:
                break
    return tuple(gens)


def _extend_partial_hom(G: FiniteGroup, H: FiniteGroup,
                        gens: Sequence[int],
                        images: Sequence[int]) -> Optional[dict]:
    """Extend gen -> image to a homomorphism on <gens>, or None on conflict.

    Every edge (x, x*g) is checked, not just a spanning tree, so a
    returned map is multiplicative on the generated subgroup.
    """
    fmap = {G.identity: H.identity}
    order = [G.identity]
    i = 0
    gt, ht = G.table, H.table
    while i < len(order):
        x = order[i]
        i += 1
        fx = fmap[x]
        for g, u in zip(gens, images):
            y = gt[x][g]
            fy = ht[fx][u]
            prev = fmap.get(y)
            if prev is None:
                fmap[y] = fy
                order.append(y)
            elif prev != fy:
                return None
    return fmap


def _hom_candidates(G: FiniteGroup, H: FiniteGroup, g: int,
                    same_order: bool) -> list[int]:
    og = G.element_order(g)
    out = []
    for u in H.elements():
        ou = H.element_order(u)
        if (ou == og) if same_order else (og % ou == 0):
            out.append(u)
    return out


def _hom_search(G: FiniteGroup, H: FiniteGroup, same_order: bool,
                only_bijective: bool, first_only: bool) -> list[GroupMap]:
    gens = generating_sequence(G)
    if not gens:
        m = GroupMap(G, H, (H.identity,) * G.order,
                     homomorphism=True, bijective=G.order == H.order)
        return [m]
    cand = [_hom_candidates(G, H, g, same_order) for g in gens]
    found: list[GroupMap] = []

    def rec(k: int, chosen: list[int]) -> bool:
        if k == len(gens):
            fmap = _extend_partial_hom(G, H, gens, chosen)
            if fmap is None or len(fmap) != G.order:
                return False
            images = tuple(fmap[g] for g in G.elements())
            bij = G.order == H.order and len(set(images)) == H.order
            if only_bijective and not bij:
                return False
            found.append(GroupMap(G, H, images, homomorphism=True, bijective=bij))
            return first_only
        for u in cand[k]:
            if _extend_partial_hom(G, H, gens[: k + 1], chosen + [u]) is None:
                continue
            if rec(k + 1, chosen + [u]):
                return True
        return False

    rec(0, [])
    found.sort(key=lambda m: m.images)
    return found


def automorphisms(G: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> list[GroupMap]:
    """All automorphisms of G, sorted by image tuple."""
    if G.order > cap:
        raise OrderCapExceeded(f"automorphism search capped at order {cap}")
    return _hom_search(G, G, same_order=True, only_bijective=True, first_only=False)


def isomorphisms_all(G: FiniteGroup, H: FiniteGroup) -> list[GroupMap]:
    """All isomorphisms G -> H (empty when none exists)."""
    if G.order != H.order or _iso_invariants(G) != _iso_invariants(H):
        return []
    return _hom_search(G, H, same_order=True, only_bijective=True, first_only=False)


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> Optional[GroupMap]:
    """An isomorphism G -> H, or None.  Screens cheap invariants first."""
    if G.order != H.order or _iso_invariants(G) != _iso_invariants(H):
        return None
    maps = _hom_search(G, H, same_order=True, only_bijective=True, first_only=True)
    return maps[0] if maps else None


def _iso_invariants(G: FiniteGroup):
    der = derived_subgroup(G)
    return (
        G.order,
        G.order_profile(),
        G.is_abelian,
        center(G).order,
        der.order,
    )


def all_homomorphisms(G: FiniteGroup, H: FiniteGroup) -> list[GroupMap]:
    """Every homomorphism G -> H, sorted by image tuple."""
    return _hom_search(G, H, same_order=False, only_bijective=False, first_only=False)


# ---------------------------------------------------------------------------
# factorizations


def exact_factorizations(
    G: FiniteGroup, subgroups: Optional[list[Subgroup]] = None
) -> list[tuple[Subgroup, Subgroup]]:
    """All ordered subgroup pairs (H, L) with |H| |L| = |G| and H i L = {e}.

    For finite groups this forces HL = G with unique expression g = h l.
    """
    subs = subgroups if subgroups is not None else all_subgroups(G)
    by_order: dict[int, list[Subgroup]] = {}
    for s in subs:
        by_order.setdefault(s.order, []).append(s)
    out = []
    e = G.identity
    for H in subs:
        rem, mod = divmod(G.order, H.order)
        if mod:
            continue
        for L in by_order.get(rem, []):
            inter = H.as_set() & L.as_set()
            if inter == {e}:
                out.append((H, L))
    out.sort(key=lambda p: (p[0].elements, p[1].elements))
    return out
