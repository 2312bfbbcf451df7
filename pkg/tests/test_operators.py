import pytest

from helpers import random_images, reference_verify
from rbgroups.corpus import corpus_group, corpus_names
from rbgroups.enumeration import graph_enumerate
from rbgroups.errors import InvalidInput
from rbgroups.groups import GroupMap, automorphisms
from rbgroups.operators import (
    RBOperator,
    bplus,
    conjugate,
    deep,
    elementary,
    image,
    inverse_argument_convert,
    is_splitting,
    kernel,
    rb_operator,
    tilde,
    verify,
    weight_convert,
)


@pytest.fixture(scope="module")
def s3_census():
    return graph_enumerate(corpus_group("S3"))


def test_constructor_validation(s3):
    with pytest.raises(InvalidInput):
        rb_operator(s3, [0, 1, 2])
    with pytest.raises(InvalidInput):
        rb_operator(s3, [0, 1, 2, 3, 4, 9])
    with pytest.raises(InvalidInput):
        rb_operator(s3, [0] * 6, weight=2)


@pytest.mark.parametrize("name", corpus_names())
def test_elementary_always_valid(name):
    G = corpus_group(name)
    if G.order > 24:
        pytest.skip("kept small; larger orders run in the acceptance suite")
    for variant in ("b0", "b_minus1"):
        op = elementary(G, variant)
        assert verify(op)
        assert reference_verify(G, op.images) is None


def test_identity_map(s3, z6):
    bad = rb_operator(s3, list(s3.elements()))
    v = verify(bad)
    assert not v and v.witness == (1, 2)
    assert verify(rb_operator(z6, list(z6.elements())))


def test_weight_minus_one_directly(s3):
    # the identity map and the constant map are the two easy solutions
    assert verify(rb_operator(s3, list(s3.elements()), weight=-1))
    assert verify(rb_operator(s3, [0] * 6, weight=-1))
    assert reference_verify(s3, list(s3.elements()), weight=-1) is None


def test_verify_matches_reference_on_random_maps(s3, rng):
    agree = 0
    for _ in range(300):
        imgs = random_images(s3, rng)
        mine = verify(rb_operator(s3, imgs))
        ref = reference_verify(s3, imgs)
        assert bool(mine) == (ref is None)
        agree += 1
    assert agree == 300


def test_census_all_reference_valid(s3_census):
    G = s3_census.group
    for op in s3_census.operators:
        assert reference_verify(G, op.images) is None


def test_tilde_involution(s3_census):
    for op in s3_census.operators:
        tt = tilde(tilde(op))
        assert tt.images == op.images
        assert verify(tilde(op))


def test_tilde_swaps_elementary(s3):
    assert tilde(elementary(s3, "b0")).images == elementary(s3, "b_minus1").images
    assert tilde(elementary(s3, "b_minus1")).images == elementary(s3, "b0").images


def test_tilde_weight_minus_one(s3):
    ident = rb_operator(s3, list(s3.elements()), weight=-1)
    assert tilde(ident).images == (0,) * 6
    assert tilde(tilde(ident)).images == ident.images


def test_conjugation_action_law(s3_census):
    G = s3_census.group
    auts = automorphisms(G)
    op = s3_census.operators[2]
    phi, psi = auts[1], auts[2]
    lhs = conjugate(conjugate(op, phi), psi)
    rhs = conjugate(op, phi.compose(psi))
    assert lhs.images == rhs.images


def test_census_closed_under_symmetry(s3_census):
    G = s3_census.group
    all_images = {op.images for op in s3_census.operators}
    for op in s3_census.operators:
        assert tilde(op).images in all_images
        for phi in automorphisms(G):
            assert conjugate(op, phi).images in all_images


def test_tilde_commutes_with_conjugation(s3_census):
    phi = automorphisms(s3_census.group)[3]
    for op in s3_census.operators:
        assert tilde(conjugate(op, phi)).images == conjugate(tilde(op), phi).images


def test_conjugate_requires_automorphism(s3):
    op = elementary(s3, "b0")
    not_bijective = GroupMap.hom(s3, s3, [0, 0, 0, 0, 0, 0])
    with pytest.raises(InvalidInput):
        conjugate(op, not_bijective)


def test_weight_convert_round_trip(s3_census):
    for op in s3_census.operators:
        c = weight_convert(op)
        assert c.weight == -1
        assert verify(c)
        back = weight_convert(c)
        assert back.weight == 1 and back.images == op.images


def test_weight_convert_of_elementary(s3):
    assert weight_convert(elementary(s3, "b0")).images == tuple(s3.elements())
    assert weight_convert(elementary(s3, "b_minus1")).images == (0,) * 6


def test_inverse_argument_convert(s3_census):
    for op in s3_census.operators:
        c = inverse_argument_convert(op)
        assert c.weight == -1 and verify(c)
        back = inverse_argument_convert(c)
        assert back.images == op.images and back.weight == 1


def test_bplus_images(s3_census):
    G = s3_census.group
    for op in s3_census.operators:
        m = bplus(op)
        assert all(m(g) == G.mul(g, op(g)) for g in G.elements())


def test_kernel_image(s3):
    b0 = elementary(s3, "b0")
    assert kernel(b0).is_whole_group()
    assert image(b0).elements == (0,)
    inv = elementary(s3, "b_minus1")
    assert kernel(inv).elements == (0,)
    assert image(inv).is_whole_group()


def test_splitting_census_counts():
    expected = {"S3": (8, 0), "D4": (18, 38), "Q8": (2, 6), "A4": (10, 8)}
    for name, (split, non) in expected.items():
        census = graph_enumerate(corpus_group(name))
        flags = [bool(is_splitting(op)) for op in census.operators]
        assert (sum(flags), len(flags) - sum(flags)) == (split, non)


def test_splitting_verdict_shape(s3_census):
    G = s3_census.group
    for op in s3_census.operators:
        sp = is_splitting(op)
        assert sp
        assert sp.kernel.order * sp.image.order == G.order
        for l in sp.image.elements:
            assert op(l) == G.inv(l)


def test_deep_values(s3, z4):
    assert deep(elementary(s3, "b_minus1")) == 0
    assert deep(elementary(s3, "b0")) == 1
    assert deep(rb_operator(z4, [0, 2, 0, 2])) == 2
    d4 = corpus_group("D4")
    values = sorted({deep(op) for op in graph_enumerate(d4).operators})
    assert values == [0, 1, 2, 3]
