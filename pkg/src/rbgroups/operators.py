"""Rota-Baxter operators on finite groups, at weight +1 and -1.

An operator is a total map B: G -> G stored as an image array.  At
weight +1 validity means B(g)B(h) = B(gB(g)hB(g)^-1) for all pairs; at
weight -1 it means C(g)C(h) = C(C(g)hC(g)^-1 g).  `verify` decides
validity exhaustively and, for weight +1, also asserts the standard
consequences (identity fixed, the inverse-pair relation, compatibility
with the induced monoid map, coset constancy on the kernel); those are
theorems, so a failure there raises StructureViolation instead of
returning an invalid verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InvalidInput, StructureViolation
from .groups import FiniteGroup, GroupMap, Subgroup

__all__ = [
    "RBOperator",
    "Verdict",
    "SplittingResult",
    "rb_operator",
    "verify",
    "elementary",
    "tilde",
    "conjugate",
    "weight_convert",
    "inverse_argument_convert",
    "bplus",
    "kernel",
    "image",
    "is_splitting",
    "deep",
]


class RBOperator:
    """A candidate Rota-Baxter operator: a group, an image array, a weight.

    `verified` is a tri-state: None (unchecked), True (valid), or the
    first failing pair (g, h).  Use `verify` to settle it.
    """

    __slots__ = ("group", "images", "weight", "verified")

    def __init__(self, group: FiniteGroup, images: Sequence[int], weight: int = 1,
                 verified=None):
        if weight not in (1, -1):
            raise InvalidInput(f"weight must be +1 or -1, got {weight}")
        imgs = tuple(int(x) for x in images)
        if len(imgs) != group.order:
            raise InvalidInput("image array length does not match the group order")
        for x in imgs:
            if not 0 <= x < group.order:
                raise InvalidInput(f"image {x} out of range")
        self.group = group
        self.images = imgs
        self.weight = weight
        self.verified = verified

    def __call__(self, g: int) -> int:
        return self.images[g]

    def __eq__(self, other):
        return (
            isinstance(other, RBOperator)
            and self.group is other.group
            and self.weight == other.weight
            and self.images == other.images
        )

    def __hash__(self):
        return hash((id(self.group), self.weight, self.images))

    def __repr__(self):
        state = {None: "unchecked", True: "valid"}.get(self.verified, "invalid")
        return f"RBOperator(weight={self.weight:+d}, {state}, images={self.images})"

    def as_map(self) -> GroupMap:
        return GroupMap.plain(self.group, self.group, self.images)


def rb_operator(group: FiniteGroup, images: Sequence[int],
                weight: int = 1) -> RBOperator:
    """Wrap an image array as an unchecked operator."""
    return RBOperator(group, images, weight)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.valid


def _first_defect(op: RBOperator) -> Optional[tuple[int, int]]:
    G, B = op.group, op.images
    t, inv = G.table, G.inverses
    if op.weight == 1:
        for g in G.elements():
            bg = B[g]
            left = t[bg]
            pre = t[g][bg]
            post = inv[bg]
            for h in G.elements():
                if left[B[h]] != B[t[t[pre][h]][post]]:
                    return (g, h)
    else:
        for g in G.elements():
            cg = B[g]
            left = t[cg]
            post = t[inv[cg]][g]
            for h in G.elements():
                if left[B[h]] != B[t[t[cg][h]][post]]:
                    return (g, h)
    return None


def _assert_consequences(op: RBOperator) -> None:
    """Pointwise facts implied by validity at weight +1; failures are bugs."""
    G, B = op.group, op.images
    t, inv = G.table, G.inverses
    e = G.identity
    if B[e] != e:
        raise StructureViolation("valid operator must fix the identity")
    for g in G.elements():
        bg = B[g]
        if t[bg][B[inv[g]]] != B[G.comm(inv[g], inv[bg])]:
            raise StructureViolation(f"inverse-pair relation fails at {g}")
        if t[bg][B[bg]] != B[t[g][bg]]:
            raise StructureViolation(f"image-composition relation fails at {g}")
        if inv[bg] != B[t[t[inv[bg]][inv[g]]][bg]]:
            raise StructureViolation(f"inverse formula fails at {g}")
    for g in G.elements():
        if B[g] == e:
            for h in G.elements():
                if B[t[g][h]] != B[h]:
                    raise StructureViolation(
                        f"kernel coset constancy fails at ({g}, {h})"
                    )


def verify(op: RBOperator) -> Verdict:
    """Decide validity over all pairs; caches the result on the operator.

    The witness, when invalid, is the lexicographically first failing
    (g, h).  A valid weight-+1 operator is additionally run through the
    consequence assertions.
    """
    if op.verified is True:
        return Verdict(True)
    if op.verified is not None:
        return Verdict(False, op.verified)
    w = _first_defect(op)
    if w is not None:
        op.verified = w
        return Verdict(False, w)
    if op.weight == 1:
        _assert_consequences(op)
    op.verified = True
    return Verdict(True)


def _require_valid(op: RBOperator) -> None:
    if not verify(op):
        raise InvalidInput(f"operator is not valid: witness {op.verified}")


def _wrap_valid(group: FiniteGroup, images: Sequence[int], weight: int,
                what: str) -> RBOperator:
    """Package a map that is valid by a theorem; re-verify anyway."""
    out = RBOperator(group, images, weight)
    v = verify(out)
    if not v:
        raise StructureViolation(f"{what} produced an invalid map at {v.witness}")
    return out


def elementary(G: FiniteGroup, which: str) -> RBOperator:
    """The two operators every group carries: g -> e and g -> g^-1."""
    if which == "b0":
        images = (G.identity,) * G.order
    elif which == "b_minus1":
        images = G.inverses
    else:
        raise InvalidInput(f"unknown elementary kind {which!r}")
    return _wrap_valid(G, images, 1, f"elementary {which}")


def tilde(op: RBOperator) -> RBOperator:
    """The involution pairing each operator with its mirror.

    Weight +1: g -> g^-1 B(g^-1).  Weight -1: g -> g C(g^-1).  Both are
    involutions on the valid operators of their weight.
    """
    _require_valid(op)
    G, B = op.group, op.images
    t, inv = G.table, G.inverses
    if op.weight == 1:
        images = [t[inv[g]][B[inv[g]]] for g in G.elements()]
    else:
        images = [t[g][B[inv[g]]] for g in G.elements()]
    return _wrap_valid(G, images, op.weight, "tilde")


def conjugate(op: RBOperator, phi: GroupMap) -> RBOperator:
    """The operator phi^-1 . B . phi for an automorphism phi.

    Satisfies conjugate(conjugate(B, phi), psi) = conjugate(B, phi . psi)
    where (phi . psi)(x) = phi(psi(x)), and commutes with tilde.
    """
    _require_valid(op)
    G = op.group
    if phi.domain is not G or phi.codomain is not G:
        raise InvalidInput("automorphism acts on a different group")
    if not (phi.homomorphism and phi.bijective):
        raise InvalidInput("conjugation needs a verified automorphism")
    inv_phi = phi.inverse().images
    images = [inv_phi[op.images[phi.images[g]]] for g in G.elements()]
    return _wrap_valid(G, images, op.weight, "conjugation")


def weight_convert(op: RBOperator) -> RBOperator:
    """The weight-swapping bijection: C(g) = gB(g), inverse B(g) = g^-1 C(g).

    Applying it twice returns the original operator.
    """
    _require_valid(op)
    G = op.group
    t, inv = G.table, G.inverses
    if op.weight == 1:
        images = [t[g][op.images[g]] for g in G.elements()]
        return _wrap_valid(G, images, -1, "weight conversion")
    images = [t[inv[g]][op.images[g]] for g in G.elements()]
    return _wrap_valid(G, images, 1, "weight conversion")


def inverse_argument_convert(op: RBOperator) -> RBOperator:
    """The other weight swap: send B to g -> B(g^-1) at the opposite weight."""
    _require_valid(op)
    G = op.group
    images = [op.images[G.inverses[g]] for g in G.elements()]
    return _wrap_valid(G, images, -op.weight, "argument inversion")


def bplus(op: RBOperator) -> GroupMap:
    """The companion map g -> gB(g).

    Not a homomorphism of (G, .) in general, but commutes with B
    pointwise, which is asserted here.
    """
    _require_valid(op)
    if op.weight != 1:
        raise InvalidInput("companion map is defined at weight +1")
    G, B = op.group, op.images
    t = G.table
    images = tuple(t[g][B[g]] for g in G.elements())
    for g in G.elements():
        if t[B[g]][B[B[g]]] != B[images[g]]:
            raise StructureViolation(f"companion map does not commute with B at {g}")
    return GroupMap.plain(G, G, images)


def kernel(op: RBOperator) -> Subgroup:
    """The preimage of the identity; a subgroup for every valid operator."""
    _require_valid(op)
    G = op.group
    e = G.identity
    return Subgroup(G, [g for g in G.elements() if op.images[g] == e])


def image(op: RBOperator) -> Subgroup:
    """The set of values; a subgroup for every valid operator."""
    _require_valid(op)
    return Subgroup(op.group, set(op.images))


@dataclass(frozen=True)
class SplittingResult:
    splitting: bool
    kernel: Optional[Subgroup] = None
    image: Optional[Subgroup] = None

    def __bool__(self) -> bool:
        return self.splitting


def is_splitting(op: RBOperator) -> SplittingResult:
    """Whether B(gB(g)) = e everywhere; then G factors as ker(B) * Im(B).

    On success the factorization is rechecked to be exact and B is
    rechecked to invert the elements of its image; both are theorems, so
    failures raise StructureViolation.
    """
    _require_valid(op)
    if op.weight != 1:
        raise InvalidInput("splitting test is defined at weight +1")
    G, B = op.group, op.images
    t = G.table
    e = G.identity
    if any(B[t[g][B[g]]] != e for g in G.elements()):
        return SplittingResult(False)
    K, Im = kernel(op), image(op)
    if K.order * Im.order != G.order or (K.as_set() & Im.as_set()) != {e}:
        raise StructureViolation("splitting operator without exact factorization")
    for x in Im.elements:
        if B[x] != G.inverses[x]:
            raise StructureViolation("splitting operator must invert its image")
    return SplittingResult(True, K, Im)


def deep(op: RBOperator) -> int:
    """Length of the strictly decreasing image chain G > B(G) > B(B(G)) > ...

    Returns the number of strict steps before the chain repeats; 0 when
    B is surjective.
    """
    _require_valid(op)
    current = frozenset(op.group.elements())
    steps = 0
    while True:
        nxt = frozenset(op.images[g] for g in current)
        if nxt == current:
            return steps
        current = nxt
        steps += 1
