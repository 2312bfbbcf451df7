"""The graded Lie ring of the lower central series, and induced operators.

Layer n is the abelian quotient of consecutive series terms G_n/G_{n+1};
the bracket of cosets is the coset of the commutator, landing in layer
i+j.  A ring element is one coset per layer, added componentwise, with
the bracket extended biadditively.  Groups whose series stalls above the
identity still get a ring: the stalled degrees contribute trivial
layers, so brackets falling there vanish.

An operator on the group that maps every series term into itself pushes
down to one map per layer; the defining group identity degenerates on
the graded side to the weight-1 Lie identity

    [R(x), R(y)] = R([R(x), y] + [x, R(y)] + [x, y])

which is verified on homogeneous pairs (both sides are biadditive once
the layer maps are additive, so homogeneous pairs decide).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import PreconditionFailed, StructureViolation
from .groups import FiniteGroup, Subgroup, lower_central_series, quotient
from .operators import RBOperator, verify

__all__ = [
    "Layer",
    "GradedLieRing",
    "graded_lie_ring",
    "check_lie_ring",
    "preserves_lower_central",
    "InducedRB",
    "induced_rb",
    "LieVerdict",
    "verify_lie_rb",
]


@dataclass(frozen=True)
class Layer:
    """One graded piece: the quotient of consecutive series terms."""

    degree: int
    quotient: FiniteGroup
    projection: dict  # element of the series term -> coset id


class GradedLieRing:
    """Associated graded ring of a group's lower central series."""

    __slots__ = ("group", "series", "layers", "_by_degree", "_brackets", "order")

    def __init__(self, group: FiniteGroup, series: Sequence[Subgroup],
                 layers: Sequence[Layer]):
        self.group = group
        self.series = tuple(series)
        self.layers = tuple(layers)
        self._by_degree = {layer.degree: i for i, layer in enumerate(self.layers)}
        self._brackets = {}
        order = 1
        for layer in self.layers:
            order *= layer.quotient.order
        self.order = order

    def zero(self) -> tuple[int, ...]:
        return tuple(layer.quotient.identity for layer in self.layers)

    def elements(self):
        def rec(i):
            if i == len(self.layers):
                yield ()
                return
            for rest in rec(i + 1):
                for x in self.layers[i].quotient.elements():
                    yield (x,) + rest
        return list(rec(0))

    def add(self, v: Sequence[int], w: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            layer.quotient.table[a][b]
            for layer, a, b in zip(self.layers, v, w)
        )

    def neg(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            layer.quotient.inverses[a] for layer, a in zip(self.layers, v)
        )

    def _term(self, degree: int) -> Subgroup:
        return self.series[min(degree, len(self.series)) - 1]

    def _layer_bracket(self, i: int, j: int):
        """Table of homogeneous brackets from layers i, j (list indices)
        into the layer of degree d_i + d_j; None when that layer is trivial."""
        key = (i, j)
        got = self._brackets.get(key)
        if got is not None:
            return got
        li, lj = self.layers[i], self.layers[j]
        d = li.degree + lj.degree
        target = self._by_degree.get(d)
        lt = self.layers[target] if target is not None else None
        term = self._term(d)
        G = self.group
        table = []
        for x in li.projection:
            row = {}
            for y in lj.projection:
                c = G.comm(x, y)
                if c not in term:
                    raise StructureViolation(
                        f"commutator of degrees {li.degree}, {lj.degree} "
                        f"escapes the series term at degree {d}"
                    )
                row[y] = None if lt is None else lt.projection[c]
            table.append(row)
        # collapse to coset level, insisting on representative independence
        out = [[0] * lj.quotient.order for _ in range(li.quotient.order)]
        seen = [[None] * lj.quotient.order for _ in range(li.quotient.order)]
        for xi, x in enumerate(li.projection):
            for y in lj.projection:
                a, b = li.projection[x], lj.projection[y]
                val = table[xi][y]
                if seen[a][b] is None:
                    seen[a][b] = val
                    out[a][b] = val if val is not None else -1
                elif seen[a][b] != val:
                    raise StructureViolation(
                        "bracket value depends on coset representatives"
                    )
        res = (out, None if lt is None else target)
        self._brackets[key] = res
        return res

    def bracket(self, v: Sequence[int], w: Sequence[int]) -> tuple[int, ...]:
        acc = list(self.zero())
        for i, li in enumerate(self.layers):
            if v[i] == li.quotient.identity:
                continue
            for j, lj in enumerate(self.layers):
                if w[j] == lj.quotient.identity:
                    continue
                table, target = self._layer_bracket(i, j)
                if target is None:
                    continue
                q = self.layers[target].quotient
                acc[target] = q.table[acc[target]][table[v[i]][w[j]]]
        return tuple(acc)


def graded_lie_ring(G: FiniteGroup) -> GradedLieRing:
    series = lower_central_series(G)
    layers = []
    for k in range(len(series) - 1):
        upper, lower = series[k], series[k + 1]
        if upper.order == lower.order:
            continue
        pack = upper.as_group()
        inner = Subgroup(pack.group, sorted(pack.from_parent[x]
                                           for x in lower.elements))
        Q, proj = quotient(pack.group, inner)
        projection = {pack.to_parent[x]: proj(x) for x in pack.group.elements()}
        layers.append(Layer(k + 1, Q, projection))
    return GradedLieRing(G, series, layers)


def check_lie_ring(ring: GradedLieRing) -> None:
    """Ring axioms over all elements: biadditivity, alternation, Jacobi.

    Raises StructureViolation on the first failure; sized for the small
    nilpotent groups this library targets.
    """
    elems = ring.elements()
    zero = ring.zero()
    br, add, neg = ring.bracket, ring.add, ring.neg
    for v in elems:
        if br(v, v) != zero:
            raise StructureViolation(f"bracket not alternating at {v}")
    for v in elems:
        for w in elems:
            if br(v, w) != neg(br(w, v)):
                raise StructureViolation(f"bracket not antisymmetric at {v}, {w}")
            for u in elems:
                if br(u, add(v, w)) != add(br(u, v), br(u, w)):
                    raise StructureViolation("bracket not additive")
                jac = add(br(u, br(v, w)),
                          add(br(v, br(w, u)), br(w, br(u, v))))
                if jac != zero:
                    raise StructureViolation(
                        f"Jacobi fails at {u}, {v}, {w}"
                    )


def bracket_nonzero_count(ring: GradedLieRing) -> int:
    """Ordered element pairs with nonvanishing bracket."""
    elems = ring.elements()
    zero = ring.zero()
    return sum(
        1 for v in elems for w in elems if ring.bracket(v, w) != zero
    )


def preserves_lower_central(op: RBOperator) -> bool:
    """Whether the operator maps every series term into itself."""
    series = lower_central_series(op.group)
    return all(
        all(op(x) in term for x in term.elements) for term in series
    )


@dataclass(frozen=True)
class InducedRB:
    """Per-layer maps obtained by pushing an operator down the grading."""

    ring: GradedLieRing
    operator: RBOperator
    layer_maps: tuple[tuple[int, ...], ...]

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(m[x] for m, x in zip(self.layer_maps, v))


def induced_rb(ring: GradedLieRing, op: RBOperator) -> InducedRB:
    """Push a series-preserving operator down to the layers.

    Refuses with PreconditionFailed when the operator is invalid, has
    the wrong weight, or moves some series term off itself.  The layer
    maps are checked to be constant on cosets.
    """
    if op.group is not ring.group:
        raise PreconditionFailed("operator acts on a different group")
    if op.weight != 1:
        raise PreconditionFailed("graded push-down needs weight +1")
    if not verify(op):
        raise PreconditionFailed(f"operator is invalid: witness {op.verified}")
    if not preserves_lower_central(op):
        raise PreconditionFailed("operator does not preserve the series terms")
    maps = []
    for layer in ring.layers:
        m = [None] * layer.quotient.order
        for x, cx in layer.projection.items():
            val = layer.projection[op(x)]
            if m[cx] is None:
                m[cx] = val
            elif m[cx] != val:
                raise StructureViolation(
                    f"layer {layer.degree} map depends on coset representatives"
                )
        maps.append(tuple(m))
    return InducedRB(ring, op, tuple(maps))


@dataclass(frozen=True)
class LieVerdict:
    valid: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.valid


def verify_lie_rb(ind: InducedRB) -> LieVerdict:
    """The weight-1 Lie identity for the induced maps.

    Checks each layer map is additive, then the identity on all
    homogeneous pairs; biadditivity of both sides extends the result to
    the whole ring.
    """
    ring = ind.ring
    for layer, m in zip(ring.layers, ind.layer_maps):
        q = layer.quotient
        for a in q.elements():
            for b in q.elements():
                if m[q.table[a][b]] != q.table[m[a]][m[b]]:
                    return LieVerdict(False, (layer.degree, a, b, "additivity"))
    for i, li in enumerate(ring.layers):
        for j, lj in enumerate(ring.layers):
            for a in li.quotient.elements():
                for b in lj.quotient.elements():
                    v = list(ring.zero())
                    w = list(ring.zero())
                    v[i] = a
                    w[j] = b
                    v, w = tuple(v), tuple(w)
                    rv, rw = ind.apply(v), ind.apply(w)
                    lhs = ring.bracket(rv, rw)
                    arg = ring.add(ring.bracket(rv, w),
                                   ring.add(ring.bracket(v, rw),
                                            ring.bracket(v, w)))
                    if lhs != ind.apply(arg):
                        return LieVerdict(
                            False, (li.degree, a, lj.degree, b, "identity")
                        )
    return LieVerdict(True)
