"""Explicit Rota-Baxter operator constructions.

Each function either returns a verified operator or refuses with a
principled error carrying a witness.  Constructions whose validity is a
theorem re-verify their output anyway and raise StructureViolation on a
mismatch, since that can only mean a library bug.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .derived import derived_group
from .errors import (
    CommutationFails,
    DecompositionNotUnique,
    ImageNotAbelian,
    InvalidInput,
    InvalidMatrix,
    NotExactFactorization,
    NotHomomorphism,
    PreconditionFailed,
    StructureViolation,
    TrivialH,
)
from .groups import (
    DirectProduct,
    FiniteGroup,
    GroupMap,
    Subgroup,
    WreathProduct,
    center,
    direct_power,
    direct_product,
    is_isomorphic,
    is_normal,
    opposite_group,
    semidirect_product,
)
from .operators import (
    RBOperator,
    conjugate,
    elementary,
    is_splitting,
    tilde,
    verify,
)

__all__ = [
    "splitting_from_factorization",
    "triangular_splitting",
    "semidirect_rb",
    "hom_to_abelian",
    "power_map",
    "PowerMapResult",
    "is_k_abelian",
    "central_conjugation",
    "affine_map_check",
    "direct_product_rb",
    "cascade_rb",
    "RBMatrix",
    "rb_matrix_check",
    "split_algebra_rb_check",
    "enumerate_rb_matrices",
    "power_product_rb",
    "nonsplitting_witness",
    "wreath_rb",
]


def _checked(G: FiniteGroup, images: Sequence[int], what: str) -> RBOperator:
    op = RBOperator(G, images, weight=1)
    v = verify(op)
    if not v:
        raise StructureViolation(f"{what} produced an invalid operator at {v.witness}")
    return op


def _same_table(A: FiniteGroup, B: FiniteGroup) -> bool:
    return A is B or A.table == B.table


def _require_valid_on(C: RBOperator, L: FiniteGroup, what: str) -> None:
    if not _same_table(C.group, L):
        raise InvalidInput(f"{what} must act on the given subgroup's packed group")
    if C.weight != 1:
        raise InvalidInput(f"{what} must have weight +1")
    if not verify(C):
        raise InvalidInput(f"{what} is not a valid operator: witness {C.verified}")


# ---------------------------------------------------------------------------
# factorization constructions


def splitting_from_factorization(G: FiniteGroup, H: Subgroup,
                                 L: Subgroup) -> RBOperator:
    """B(hl) = l^-1 for an exact factorization G = HL.

    Kernel H and image L are recomputed from the result and matched
    against the inputs.
    """
    if H.parent is not G or L.parent is not G:
        raise InvalidInput("factors belong to a different group")
    e = G.identity
    if H.order * L.order != G.order or (H.as_set() & L.as_set()) != {e}:
        raise NotExactFactorization(
            f"|H| |L| = {H.order}*{L.order} with intersection size "
            f"{len(H.as_set() & L.as_set())} does not factor order {G.order}"
        )
    images = [-1] * G.order
    for h in H.elements:
        row = G.table[h]
        for l in L.elements:
            g = row[l]
            if images[g] != -1:
                raise NotExactFactorization(f"element {g} decomposes twice")
            images[g] = G.inverses[l]
    op = _checked(G, images, "splitting construction")
    sp = is_splitting(op)
    if not sp or sp.kernel.elements != H.elements or sp.image.elements != L.elements:
        raise StructureViolation("splitting construction lost its factorization")
    return op


def _triple_decomposition(G: FiniteGroup, H: Subgroup, L: Subgroup,
                          M: Subgroup) -> dict[int, tuple[int, int, int]]:
    if H.order * L.order * M.order != G.order:
        raise DecompositionNotUnique(
            f"factor orders {H.order}*{L.order}*{M.order} != {G.order}"
        )
    dec: dict[int, tuple[int, int, int]] = {}
    t = G.table
    for h in H.elements:
        for l in L.elements:
            hl = t[h][l]
            for m in M.elements:
                g = t[hl][m]
                if g in dec:
                    raise DecompositionNotUnique(
                        f"element {g} decomposes as {dec[g]} and as ({h}, {l}, {m})"
                    )
                dec[g] = (h, l, m)
    return dec


def triangular_splitting(G: FiniteGroup, H: Subgroup, L: Subgroup, M: Subgroup,
                         C: RBOperator) -> RBOperator:
    """B(hlm) = C(l) m^-1 for a triple factorization G = HLM.

    Requires unique three-part decompositions, H commuting with L, the
    C-image of L commuting with M, and C a valid operator on L (given on
    L's packed group).  The twisted group of the result is isomorphic to
    H x L_C x M-with-reversed-product, which is asserted.
    """
    for S in (H, L, M):
        if S.parent is not G:
            raise InvalidInput("factors belong to a different group")
    packL = L.as_group()
    _require_valid_on(C, packL.group, "operator on the middle factor")
    dec = _triple_decomposition(G, H, L, M)
    for h in H.elements:
        for l in L.elements:
            if G.comm(h, l) != G.identity:
                raise CommutationFails(
                    f"first and middle factors do not commute at ({h}, {l})"
                )
    c_parent = {l: packL.to_parent[C(packL.from_parent[l])] for l in L.elements}
    for l in L.elements:
        for m in M.elements:
            if G.comm(c_parent[l], m) != G.identity:
                raise CommutationFails(
                    f"image of the middle factor does not commute with the last "
                    f"factor at ({l}, {m})"
                )
    images = [0] * G.order
    for g, (h, l, m) in dec.items():
        images[g] = G.table[c_parent[l]][G.inverses[m]]
    op = _checked(G, images, "triangular splitting")

    dgc = derived_group(C)
    expected = direct_product(
        direct_product(H.as_group().group, dgc.group).group,
        opposite_group(M.as_group().group),
    ).group
    if is_isomorphic(derived_group(op).group, expected) is None:
        raise StructureViolation(
            "twisted group of the triangular splitting has the wrong type"
        )
    return op


def semidirect_rb(G: FiniteGroup, H: Subgroup, L: Subgroup,
                  C: RBOperator) -> RBOperator:
    """B(hl) = C(l) for G = H x| L with H normal and C valid on L.

    The twisted group is H x| L_C; this is asserted by checking that
    (h, l) -> h . l is an isomorphism from an explicitly built
    semidirect product onto the twisted group.
    """
    if H.parent is not G or L.parent is not G:
        raise InvalidInput("factors belong to a different group")
    if not is_normal(H):
        raise InvalidInput("first factor must be normal")
    if H.order * L.order != G.order or (H.as_set() & L.as_set()) != {G.identity}:
        raise DecompositionNotUnique("factors do not decompose the group")
    packL = L.as_group()
    _require_valid_on(C, packL.group, "operator on the complement")
    images = [0] * G.order
    for h in H.elements:
        row = G.table[h]
        for l_local in packL.group.elements():
            l = packL.to_parent[l_local]
            images[row[l]] = packL.to_parent[C(l_local)]
    op = _checked(G, images, "semidirect construction")

    dg = derived_group(op)
    ct = dg.circle_table
    packH = H.as_group()
    dgc = derived_group(C)
    try:
        action = []
        for l_local in dgc.group.elements():
            l = packL.to_parent[l_local]
            li = dg.group.inverses[l]
            row = [packH.from_parent[ct[ct[l][packH.to_parent[x]]][li]]
                   for x in packH.group.elements()]
            action.append(row)
        sdp = semidirect_product(packH.group, dgc.group, action)
        witness = [ct[packH.to_parent[h]][packL.to_parent[l]]
                   for h, l in (sdp.decode(x) for x in sdp.group.elements())]
        m = GroupMap.hom(sdp.group, dg.group, witness)
    except (KeyError, NotHomomorphism) as exc:
        raise StructureViolation(
            f"twisted group is not the expected semidirect product: {exc}"
        ) from exc
    if not m.bijective:
        raise StructureViolation("twisted group is not the expected semidirect product")
    return op


# ---------------------------------------------------------------------------
# homomorphism and formula constructions


def hom_to_abelian(G: FiniteGroup, images: Sequence[int],
                   mode: str = "hom") -> RBOperator:
    """An (anti)homomorphism of G into an abelian subgroup of itself.

    Multiplicativity per the mode and commutativity of the image are
    checked; any such map is a valid weight-+1 operator.
    """
    if mode not in ("hom", "antihom"):
        raise InvalidInput(f"mode must be 'hom' or 'antihom', got {mode!r}")
    f = tuple(int(x) for x in images)
    if len(f) != G.order:
        raise InvalidInput("image array length does not match the group order")
    t = G.table
    for a in G.elements():
        for b in G.elements():
            want = t[f[a]][f[b]] if mode == "hom" else t[f[b]][f[a]]
            if f[t[a][b]] != want:
                raise NotHomomorphism(f"map is not a {mode} at pair ({a}, {b})")
    img = sorted(set(f))
    for i, x in enumerate(img):
        for y in img[i + 1:]:
            if t[x][y] != t[y][x]:
                raise ImageNotAbelian(f"image elements {x} and {y} do not commute")
    return _checked(G, f, "abelian-image construction")


@dataclass(frozen=True)
class PowerMapResult:
    """Outcome of the power-map construction: an operator or a witness."""

    operator: Optional[RBOperator]
    witness: Optional[tuple[int, int]]

    def __bool__(self) -> bool:
        return self.operator is not None


def power_map(G: FiniteGroup, n: int) -> PowerMapResult:
    """g -> g^n, accepted exactly when it satisfies the defining identity.

    Decided by a full verification of the candidate, independently of
    `is_k_abelian`; the two must agree with k = n + 1.
    """
    if n < 0:
        raise InvalidInput("power map needs n >= 0")
    candidate = RBOperator(G, [G.power(g, n) for g in G.elements()], weight=1)
    v = verify(candidate)
    if v:
        return PowerMapResult(candidate, None)
    return PowerMapResult(None, v.witness)


def is_k_abelian(G: FiniteGroup, k: int) -> bool:
    """Whether (gh)^k = g^k h^k for all pairs, checked directly."""
    t = G.table
    for g in G.elements():
        for h in G.elements():
            if G.power(t[g][h], k) != t[G.power(g, k)][G.power(h, k)]:
                return False
    return True


def central_conjugation(G: FiniteGroup, g: int) -> Optional[RBOperator]:
    """x -> g^-1 x^-1 g, valid exactly when [g, G] lies in the center.

    On success the twisted product is the reversed product of G, which
    is asserted.  Returns None when the centrality criterion fails.
    """
    z = center(G).as_set()
    if any(G.comm(g, x) not in z for x in G.elements()):
        return None
    t, inv = G.table, G.inverses
    gi = inv[g]
    images = [t[t[gi][inv[x]]][g] for x in G.elements()]
    op = _checked(G, images, "central conjugation")
    dg = derived_group(op)
    opp = opposite_group(G)
    if dg.group.table != opp.table:
        raise StructureViolation(
            "central conjugation must twist into the reversed product"
        )
    return op


def affine_map_check(G: FiniteGroup, a: int, b: int) -> Optional[RBOperator]:
    """x -> a x b, valid exactly when G is abelian and b = a^-1.

    The direct verification result is compared against that
    characterization; disagreement would be a library bug.
    """
    candidate = RBOperator(G, [G.prod([a, x, b]) for x in G.elements()], weight=1)
    v = verify(candidate)
    expected = G.is_abelian and b == G.inverses[a]
    if bool(v) != expected:
        raise StructureViolation(
            "affine map validity disagrees with the abelian characterization"
        )
    return candidate if v else None


# ---------------------------------------------------------------------------
# direct product constructions


def direct_product_rb(prod: DirectProduct,
                      ops: Sequence[RBOperator]) -> RBOperator:
    """The componentwise operator on a direct product."""
    if len(ops) != len(prod.factors):
        raise InvalidInput("need one operator per factor")
    for op, F in zip(ops, prod.factors):
        if not _same_table(op.group, F):
            raise InvalidInput("operator acts on a different factor")
        if op.weight != 1:
            raise InvalidInput("componentwise construction needs weight +1")
        if not verify(op):
            raise InvalidInput(f"factor operator is invalid: witness {op.verified}")
    G = prod.group
    images = [
        prod.encode([op.images[x] for op, x in zip(ops, prod.decode(g))])
        for g in G.elements()
    ]
    return _checked(G, images, "componentwise construction")


def cascade_rb(G: FiniteGroup, n: int, variant: str = "plain",
               prod: Optional[DirectProduct] = None) -> RBOperator:
    """The shift-and-accumulate operators on G^n.

    plain: component i becomes the product g_{i-1} g_{i-2} ... g_1 (so
    the first component is e).  tilde: component i becomes
    g_i^-1 g_{i-1}^-1 ... g_1^-1.  The two are each other's images under
    the tilde involution, which is checked on every call.
    """
    if variant not in ("plain", "tilde"):
        raise InvalidInput(f"variant must be 'plain' or 'tilde', got {variant!r}")
    if n < 1:
        raise InvalidInput("cascade needs n >= 1")
    if prod is None:
        prod = direct_power(G, n)
    elif len(prod.factors) != n or any(F is not G for F in prod.factors):
        raise InvalidInput("product does not match the requested power")
    P = prod.group

    plain_images = []
    tilde_images = []
    for x in P.elements():
        parts = prod.decode(x)
        desc = G.identity
        asc = G.identity
        plain_parts = []
        tilde_parts = []
        for i in range(n):
            plain_parts.append(desc)
            desc = G.table[parts[i]][desc]
            asc = G.table[asc][parts[i]]
            tilde_parts.append(G.inverses[asc])
        plain_images.append(prod.encode(plain_parts))
        tilde_images.append(prod.encode(tilde_parts))

    plain_op = _checked(P, plain_images, "cascade")
    tilde_op = _checked(P, tilde_images, "cascade mirror")
    if tilde(plain_op).images != tilde_op.images:
        raise StructureViolation("cascade variants are not tilde partners")
    return plain_op if variant == "plain" else tilde_op


@dataclass(frozen=True)
class RBMatrix:
    """A square matrix over {-1, 0, 1} passing the split-algebra conditions."""

    size: int
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, pos):
        i, k = pos
        return self.entries[i][k]

    def is_upper_triangular(self) -> bool:
        return all(
            self.entries[i][k] == 0
            for i in range(self.size)
            for k in range(i)
        )


def _as_matrix(r) -> RBMatrix:
    if isinstance(r, RBMatrix):
        return r
    rows = tuple(tuple(int(x) for x in row) for row in r)
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise InvalidInput("matrix is not square")
    return RBMatrix(n, rows)


def rb_matrix_check(r) -> bool:
    """The three combinatorial conditions for a split-algebra operator.

    (1) each row has a 0 diagonal with off-diagonal entries in {0, 1},
    or a -1 diagonal with off-diagonal entries in {0, -1}; (2) a
    symmetric zero pair (i, k) forces, for every other l, one of r_il,
    r_kl to vanish; (3) a nonzero r_ik forces r_ki = 0 and each other
    column l to have r_kl = 0 or r_il = r_ik.
    """
    m = _as_matrix(r)
    n = m.size
    for i in range(n):
        d = m[i, i]
        if d == 0:
            allowed = (0, 1)
        elif d == -1:
            allowed = (0, -1)
        else:
            return False
        if any(m[i, k] not in allowed for k in range(n) if k != i):
            return False
    for i in range(n):
        for k in range(n):
            if i == k:
                continue
            if m[i, k] == 0 and m[k, i] == 0:
                if any(
                    m[i, l] * m[k, l] != 0
                    for l in range(n)
                    if l != i and l != k
                ):
                    return False
            if m[i, k] != 0:
                if m[k, i] != 0:
                    return False
                for l in range(n):
                    if l == i or l == k:
                        continue
                    if m[k, l] != 0 and m[i, l] != m[i, k]:
                        return False
    return True


def split_algebra_rb_check(r) -> bool:
    """Independent oracle: the weight-1 operator identity on the split
    commutative algebra with componentwise product, tested on basis pairs.

    R(e_i) = sum_k r_ik e_k.  Both sides of R(x)R(y) =
    R(R(x)y + xR(y) + xy) are bilinear, so basis pairs decide; entries
    are integers, so integer arithmetic is exact.
    """
    m = _as_matrix(r)
    n = m.size
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = m[i, k] * m[j, k]
                rhs = m[i, j] * m[j, k] + m[j, i] * m[i, k]
                if i == j:
                    rhs += m[i, k]
                if lhs != rhs:
                    return False
    return True


def enumerate_rb_matrices(n: int) -> list[RBMatrix]:
    """All upper-triangular matrices over {-1, 0, 1} passing the conditions,
    in lexicographic order of their flattened entries."""
    if n < 1:
        raise InvalidInput("matrix size must be >= 1")
    slots = [(i, k) for i in range(n) for k in range(i, n)]
    out = []
    for values in itertools.product((-1, 0, 1), repeat=len(slots)):
        rows = [[0] * n for _ in range(n)]
        for (i, k), v in zip(slots, values):
            rows[i][k] = v
        m = RBMatrix(n, tuple(tuple(row) for row in rows))
        if rb_matrix_check(m):
            out.append(m)
    out.sort(key=lambda m: m.entries)
    return out


def power_product_rb(G: FiniteGroup, n: int, r,
                     psis: Optional[Sequence[GroupMap]] = None,
                     prod: Optional[DirectProduct] = None) -> RBOperator:
    """The matrix-driven operator on G^n: component i collects the factors
    g_s^{r_si} for s = i down to 1.

    With automorphisms psi_2..psi_n, each inner factor is twisted before
    the next one multiplies in; the twisted map must coincide with
    conjugating the plain map by the diagonal automorphism built from
    the psi chain, and that is asserted.
    """
    m = _as_matrix(r)
    if m.size != n:
        raise InvalidMatrix(f"matrix size {m.size} does not match n = {n}")
    if not m.is_upper_triangular():
        raise InvalidMatrix("matrix must be upper-triangular")
    if not rb_matrix_check(m):
        raise InvalidMatrix("matrix fails the split-algebra conditions")
    if prod is None:
        prod = direct_power(G, n)
    elif len(prod.factors) != n or any(F is not G for F in prod.factors):
        raise InvalidInput("product does not match the requested power")
    if psis is not None:
        if len(psis) != n - 1:
            raise InvalidInput("need one automorphism per component from the second")
        for psi in psis:
            if psi.domain is not G or psi.codomain is not G:
                raise InvalidInput("twist automorphism acts on a different group")
            if not (psi.homomorphism and psi.bijective):
                raise InvalidInput("twists must be verified automorphisms")
    P = prod.group

    def power(x: int, exp: int) -> int:
        if exp == 0:
            return G.identity
        return x if exp == 1 else G.inverses[x]

    plain_images = []
    for x in P.elements():
        parts = prod.decode(x)
        comps = []
        for i in range(n):
            acc = G.identity
            for s in range(i, -1, -1):
                acc = G.table[acc][power(parts[s], m[s, i])]
            comps.append(acc)
        plain_images.append(prod.encode(comps))
    plain_op = _checked(P, plain_images, "matrix power product")
    if psis is None:
        return plain_op

    twisted_images = []
    for x in P.elements():
        parts = prod.decode(x)
        comps = [power(parts[0], m[0, 0])]
        for i in range(1, n):
            acc = power(parts[0], m[0, i])
            for s in range(1, i):
                acc = G.table[power(parts[s], m[s, i])][psis[s - 1](acc)]
            comps.append(G.table[power(parts[i], m[i, i])][psis[i - 1](acc)])
        twisted_images.append(prod.encode(comps))
    twisted_op = _checked(P, twisted_images, "twisted matrix power product")

    chain = [list(range(G.order))]
    for psi in psis:
        inv_psi = psi.inverse().images
        chain.append([chain[-1][inv_psi[x]] for x in G.elements()])
    phi_images = [
        prod.encode([chain[i][x] for i, x in enumerate(prod.decode(g))])
        for g in P.elements()
    ]
    phi = GroupMap.automorphism(P, phi_images)
    if conjugate(plain_op, phi).images != twisted_op.images:
        raise StructureViolation(
            "twisted power product is not the conjugate of the plain one"
        )
    return twisted_op


def nonsplitting_witness(H: FiniteGroup, L: FiniteGroup) -> RBOperator:
    """(h1, h2, l) -> (e, h1, e) on H x H x L: valid and never splitting
    for nontrivial H."""
    if H.order == 1:
        raise TrivialH("witness degenerates to the trivial operator")
    prod = DirectProduct((H, H, L))
    e_h, e_l = H.identity, L.identity
    images = []
    for x in prod.group.elements():
        h1, _, _ = prod.decode(x)
        images.append(prod.encode((e_h, h1, e_l)))
    op = _checked(prod.group, images, "non-splitting witness")
    if is_splitting(op):
        raise StructureViolation("witness operator unexpectedly splits")
    return op


# ---------------------------------------------------------------------------
# wreath product constructions


def wreath_rb(W: WreathProduct, variant: str,
              phi: Optional[GroupMap] = None,
              b_top: Optional[RBOperator] = None,
              b_base: Optional[RBOperator] = None) -> RBOperator:
    """Operators on a wreath product H wr L.

    inverse_base: (l, f) -> (e, f^-1), the splitting operator of the
    factorization by the top and base subgroups.  top_endo: (l, f) ->
    (phi(l), e) for an endomorphism phi of an abelian L.  componentwise:
    (l, f) -> (B_L(l), B_base(f)) when the shift action is trivial,
    i.e. when L or H is trivial; B_base acts on the base group coded as
    the direct power of H over L.
    """
    G = W.group
    L, H = W.L, W.H
    if variant == "inverse_base":
        images = []
        for x in G.elements():
            l, f = W.decode(x)
            finv = tuple(H.inverses[v] for v in f)
            images.append(W.encode(L.identity, finv))
        op = _checked(G, images, "base inversion")
        if not is_splitting(op):
            raise StructureViolation("base inversion must split")
        return op

    if variant == "top_endo":
        if not L.is_abelian:
            raise PreconditionFailed("top group must be abelian for this variant")
        if phi is None or phi.domain is not L or phi.codomain is not L:
            raise InvalidInput("need an endomorphism of the top group")
        if not phi.homomorphism:
            raise InvalidInput("top map must be a verified homomorphism")
        trivial_f = (H.identity,) * L.order
        images = []
        for x in G.elements():
            l, _ = W.decode(x)
            images.append(W.encode(phi(l), trivial_f))
        return _checked(G, images, "top endomorphism")

    if variant == "componentwise":
        if L.order > 1 and H.order > 1:
            raise PreconditionFailed(
                "componentwise variant needs a trivial shift action"
            )
        if b_top is None or not _same_table(b_top.group, L):
            raise InvalidInput("need an operator on the top group")
        if not verify(b_top) or b_top.weight != 1:
            raise InvalidInput("top operator must be valid at weight +1")
        base = direct_power(H, L.order)
        if b_base is None or not _same_table(b_base.group, base.group):
            raise InvalidInput(
                "need an operator on the base group (direct power of H over L)"
            )
        if not verify(b_base) or b_base.weight != 1:
            raise InvalidInput("base operator must be valid at weight +1")
        images = []
        for x in G.elements():
            l, f = W.decode(x)
            fb = base.decode(b_base(base.encode(f)))
            images.append(W.encode(b_top(l), fb))
        return _checked(G, images, "componentwise wreath")

    raise InvalidInput(f"unknown wreath variant {variant!r}")
