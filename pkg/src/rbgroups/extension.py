"""Deciding whether prescribed generator images extend to an operator.

Given generators a_1..a_s of G and prescribed values u_1..u_s, the
question is whether some valid weight-+1 operator B has B(a_i) = u_i.
Each word w = a_{i1}^{k1} ... a_{im}^{km} in the generators gets two
evaluations:

    word_image(w)  =  u_{i1}^{k1} ... u_{im}^{km}
    word_probe(w)  =  (a_{i1} u_{i1})^{k1} ... (a_{im} u_{im})^{km}
                      . u_{im}^{-km} ... u_{i1}^{-k1}

and the pair map w -> (word_probe(w) word_image(w), word_image(w)) is
multiplicative into G x G, because the probe-times-image component
collapses to the plain product of the (a_i u_i)^{k} factors.  Its image
is therefore the subgroup H generated by the pairs (a_i u_i, u_i).

If B exists, its graph {(g B(g), B(g))} is a subgroup containing those
pairs, hence containing H; so H meeting the diagonal of G x G outside
the identity refutes every extension at once, and the offending word is
a finite certificate: two words with equal probe values but different
image values.  Conversely a diagonal-free H of full size |G| decodes to
an operator by reading B(x y^-1) = y off its pairs, and the encode map
g -> (g B(g), B(g)) is then an isomorphism from the twisted group onto
H.  A diagonal-free H of smaller size leaves the answer open locally;
the decision falls back to a census of the whole group when its order
permits, and is reported as undecided otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import random

from .derived import derived_group
from .errors import CondFails, InvalidInput, NotHomomorphism, StructureViolation
from .groups import FiniteGroup, GroupMap, from_cayley_table, subgroup_generated
from .operators import RBOperator, verify

__all__ = [
    "Word",
    "word_image",
    "word_probe",
    "word_pair",
    "word_identities_check",
    "ClosureGroup",
    "closure_group",
    "ExtensionResult",
    "extend_generators",
    "DEFAULT_CENSUS_CAP",
]

Word = tuple  # of (generator_index, exponent) syllables, exponent nonzero

DEFAULT_CENSUS_CAP = 60


def _check_word(word: Sequence, s: int) -> None:
    for step in word:
        i, k = step
        if not 0 <= i < s:
            raise InvalidInput(f"word uses generator index {i} out of range")
        if k == 0:
            raise InvalidInput("word exponent must be nonzero")


def _check_problem(G: FiniteGroup, gens: Sequence[int],
                   images: Sequence[int]) -> tuple[list[int], list[int]]:
    gens = [int(a) for a in gens]
    images = [int(u) for u in images]
    if len(gens) != len(images):
        raise InvalidInput("need one prescribed image per generator")
    for x in gens + images:
        if not 0 <= x < G.order:
            raise InvalidInput(f"element {x} out of range for order {G.order}")
    return gens, images


def word_image(G: FiniteGroup, gens: Sequence[int], images: Sequence[int],
               word: Sequence) -> int:
    """The word evaluated through the prescribed images."""
    _check_word(word, len(gens))
    acc = G.identity
    for i, k in word:
        acc = G.table[acc][G.power(images[i], k)]
    return acc


def word_probe(G: FiniteGroup, gens: Sequence[int], images: Sequence[int],
               word: Sequence) -> int:
    """The twisted-product evaluation of the word.

    Left part: the (a_i u_i)^k factors in word order; right part: the
    u_i^-k factors in reversed order.  Exponents may be any nonzero
    integers; splitting a syllable leaves both parts unchanged, so the
    value depends only on the underlying free-group word.
    """
    _check_word(word, len(gens))
    t = G.table
    left = G.identity
    for i, k in word:
        left = t[left][G.power(t[gens[i]][images[i]], k)]
    right = G.identity
    for i, k in reversed(word):
        right = t[right][G.power(images[i], -k)]
    return t[left][right]


def word_pair(G: FiniteGroup, gens: Sequence[int], images: Sequence[int],
              word: Sequence) -> tuple[int, int]:
    """The multiplicative pair (probe * image, image) in G x G."""
    b = word_image(G, gens, images, word)
    p = word_probe(G, gens, images, word)
    return (G.table[p][b], b)


def _word_inverse(word: Sequence) -> Word:
    return tuple((i, -k) for i, k in reversed(word))


def word_identities_check(G: FiniteGroup, gens: Sequence[int],
                          images: Sequence[int],
                          words: Optional[Sequence[Word]] = None,
                          rng: Optional[random.Random] = None) -> bool:
    """Self-test of the two word evaluations against their product rules.

    Checks, over a sample of words w, w', that

      probe(w^-1)        = image(w)^-1 probe(w)^-1 image(w)
      probe(w w')        = probe(w) image(w) probe(w') image(w)^-1
      probe(w'^-1 w w')  = image(w')^-1 probe(w')^-1 probe(w) image(w)
                           . probe(w') image(w)^-1 image(w')

    These rules are what make the pair map multiplicative, so they are
    the ground truth behind the closure construction; a False verdict
    means the evaluators themselves are broken, not the input.  When no
    sample is given, one is drawn from rng (seeded by default): the
    empty word, each single letter, and random words of up to eight
    syllables with exponents up to +-5.
    """
    gens, images = _check_problem(G, gens, images)
    if words is None:
        rng = rng or random.Random(11)
        sample = [(), *(((i, 1),) for i in range(len(gens)))]
        for _ in range(24):
            n = rng.randint(1, 8)
            sample.append(tuple(
                (rng.randrange(len(gens)), rng.choice([k for k in range(-5, 6) if k]))
                for _ in range(n)
            ))
    else:
        sample = [tuple(w) for w in words]
    m, v = G.mul, G.inv

    def probe(w):
        return word_probe(G, gens, images, w)

    def image(w):
        return word_image(G, gens, images, w)

    for w in sample:
        pa, ba = probe(w), image(w)
        if probe(_word_inverse(w)) != m(m(v(ba), v(pa)), ba):
            return False
        for w2 in sample:
            pb, bb = probe(w2), image(w2)
            if probe(w + w2) != m(m(m(pa, ba), pb), v(ba)):
                return False
            conj = _word_inverse(w2) + w + w2
            expected = m(m(m(m(m(m(v(bb), v(pb)), pa), ba), pb), v(ba)), bb)
            if probe(conj) != expected:
                return False
    return True


@dataclass(frozen=True)
class ExtensionResult:
    """Outcome of the generator-extension decision.

    status is "extends", "no_extension", or "undecided"; cond records
    whether the pair closure avoids the diagonal; closure_order is the
    size of the pair subgroup; via says how the decision was reached
    ("closure" or "census").  witness, present exactly when cond fails,
    is a pair of words with equal probe values but different image
    values.
    """

    status: str
    cond: bool
    closure_order: int
    via: Optional[str] = None
    operator: Optional[RBOperator] = None
    witness: Optional[tuple[Word, Word]] = None

    def __bool__(self) -> bool:
        return self.status == "extends"


def _closure_pairs(G: FiniteGroup, gens: Sequence[int],
                   images: Sequence[int]):
    """BFS closure of the generator pairs in G x G with parent pointers.

    Returns (pairs dict mapping pair -> parent step, first diagonal
    collision or None).
    """
    t, inv = G.table, G.inverses
    e = G.identity
    steps = []
    for i, (a, u) in enumerate(zip(gens, images)):
        au = t[a][u]
        steps.append(((au, u), (i, 1)))
        steps.append(((inv[au], inv[u]), (i, -1)))
    root = (e, e)
    parents: dict[tuple[int, int], Optional[tuple]] = {root: None}
    queue = [root]
    collision = None
    while queue:
        nxt = []
        for x, y in queue:
            for (dx, dy), step in steps:
                p = (t[x][dx], t[y][dy])
                if p in parents:
                    continue
                parents[p] = ((x, y), step)
                if p[0] == p[1] and collision is None:
                    collision = p
                nxt.append(p)
        queue = nxt
    return parents, collision


def _word_of(parents, pair) -> Word:
    out = []
    while parents[pair] is not None:
        prev, step = parents[pair]
        out.append(step)
        pair = prev
    return tuple(reversed(out))


@dataclass(frozen=True)
class ClosureGroup:
    """The pair closure of an extension problem, carried as a group.

    group multiplies closure elements coordinatewise, the product
    inherited from G x G; pairs[i] is the (x, y) pair behind element i.
    probe sends element i to x * y^-1 and image sends it to y, so the
    two word evaluations factor through the closure.  image is always a
    homomorphism (it is the second projection); probe in general is
    not.
    """

    group: FiniteGroup
    pairs: tuple[tuple[int, int], ...]
    probe: GroupMap
    image: GroupMap


def closure_group(G: FiniteGroup, gens: Sequence[int],
                  images: Sequence[int]) -> ClosureGroup:
    """The group the prescribed words generate, with its evaluation maps.

    The generators must generate G.  Words in the generators, with two
    words identified when they probe to the same element, form a group
    exactly when equal probe values force equal image values; that is
    the diagonal condition on the pair closure, and its failure raises
    CondFails with the offending word.  On success the quotient is
    realized concretely as the closure subgroup of G x G, together
    with the probe and image maps described on ClosureGroup.

    Every closure element is reached by an actual word (checked), so
    the probe map and the word-level probe evaluation have the same
    image set.
    """
    gens, images = _check_problem(G, gens, images)
    if not subgroup_generated(G, gens).is_whole_group():
        raise InvalidInput("the given elements do not generate the group")
    parents, collision = _closure_pairs(G, gens, images)
    if collision is not None:
        w = _word_of(parents, collision)
        raise CondFails(
            f"word {list(w)} probes to the identity but has image "
            f"{collision[1]}, so probe classes do not determine images"
        )

    t, inv = G.table, G.inverses
    ordered = sorted(parents)
    index = {p: i for i, p in enumerate(ordered)}
    table = [
        [index[(t[x1][x2], t[y1][y2])] for (x2, y2) in ordered]
        for (x1, y1) in ordered
    ]
    H = from_cayley_table(table, name=f"pair-closure({G.name})")
    probe_vals = [t[x][inv[y]] for x, y in ordered]
    image_vals = [y for _, y in ordered]
    for i, p in enumerate(ordered):
        w = _word_of(parents, p)
        if (word_probe(G, gens, images, w) != probe_vals[i]
                or word_image(G, gens, images, w) != image_vals[i]):
            raise StructureViolation(
                "closure pair disagrees with its word evaluation"
            )
    return ClosureGroup(
        group=H,
        pairs=tuple(ordered),
        probe=GroupMap.plain(H, G, probe_vals),
        image=GroupMap.hom(H, G, image_vals),
    )


def _decode_closure(G: FiniteGroup, gens: Sequence[int],
                    images: Sequence[int], pairs) -> RBOperator:
    t, inv = G.table, G.inverses
    imgs = [-1] * G.order
    for x, y in pairs:
        g = t[x][inv[y]]
        if imgs[g] != -1:
            raise StructureViolation("closure decodes the same element twice")
        imgs[g] = y
    if -1 in imgs:
        raise StructureViolation("full-size closure failed to cover the group")
    op = RBOperator(G, imgs, weight=1)
    v = verify(op)
    if not v:
        raise StructureViolation(f"decoded extension is invalid at {v.witness}")
    for a, u in zip(gens, images):
        if op(a) != u:
            raise StructureViolation("decoded extension lost a prescribed value")

    ordered = sorted(pairs)
    index = {p: i for i, p in enumerate(ordered)}
    table = [
        [index[(t[x1][x2], t[y1][y2])] for (x2, y2) in ordered]
        for (x1, y1) in ordered
    ]
    pair_group = from_cayley_table(table, name="pair-closure")
    twisted = derived_group(op).group
    enc = [index[(t[g][op(g)], op(g))] for g in G.elements()]
    try:
        iso = GroupMap.hom(twisted, pair_group, enc)
    except NotHomomorphism as exc:
        raise StructureViolation(
            f"twisted group does not match the pair closure: {exc}"
        ) from exc
    if not iso.bijective:
        raise StructureViolation("twisted group does not match the pair closure")
    return op


def extend_generators(G: FiniteGroup, gens: Sequence[int],
                      images: Sequence[int],
                      census_cap: int = DEFAULT_CENSUS_CAP) -> ExtensionResult:
    """Decide whether B(a_i) = u_i extends to a valid operator on G.

    The generators must generate G.  A diagonal collision in the pair
    closure refutes every extension and yields a word witness; a
    diagonal-free closure of full size decodes to the unique extension.
    A smaller diagonal-free closure is settled by a whole-group census
    when |G| <= census_cap and reported as undecided otherwise.
    """
    gens = [int(a) for a in gens]
    images = [int(u) for u in images]
    if len(gens) != len(images):
        raise InvalidInput("need one prescribed image per generator")
    for x in gens + images:
        if not 0 <= x < G.order:
            raise InvalidInput(f"element {x} out of range for order {G.order}")
    if not subgroup_generated(G, gens).is_whole_group():
        raise InvalidInput("the given elements do not generate the group")

    parents, collision = _closure_pairs(G, gens, images)
    if collision is not None:
        w = _word_of(parents, collision)
        witness = (w, ())
        pe = word_probe(G, gens, images, w)
        be = word_image(G, gens, images, w)
        if pe != G.identity or be == G.identity:
            raise StructureViolation("diagonal collision produced a bad witness")
        return ExtensionResult(
            status="no_extension", cond=False, closure_order=len(parents),
            via="closure", witness=witness,
        )

    if len(parents) == G.order:
        op = _decode_closure(G, gens, images, parents)
        return ExtensionResult(
            status="extends", cond=True, closure_order=len(parents),
            via="closure", operator=op,
        )

    if G.order <= census_cap:
        from .enumeration import graph_enumerate

        for op in graph_enumerate(G).operators:
            if all(op(a) == u for a, u in zip(gens, images)):
                return ExtensionResult(
                    status="extends", cond=True, closure_order=len(parents),
                    via="census", operator=op,
                )
        return ExtensionResult(
            status="no_extension", cond=True, closure_order=len(parents),
            via="census",
        )
    return ExtensionResult(
        status="undecided", cond=True, closure_order=len(parents),
        via=None,
    )
