import pytest

from helpers import naive_is_subgroup
from rbgroups.corpus import corpus_group
from rbgroups.errors import (
    ActionNotHomomorphism,
    InvalidInput,
    NoIdentity,
    NotAssociative,
    NotHomomorphism,
    NotLatinSquare,
    OrderCapExceeded,
)
from rbgroups.groups import (
    GroupMap,
    Subgroup,
    all_homomorphisms,
    all_subgroups,
    automorphisms,
    center,
    commutator_subgroup,
    derived_subgroup,
    direct_product,
    exact_factorizations,
    fixed_point_free,
    from_cayley_table,
    from_permutations,
    generating_sequence,
    is_isomorphic,
    is_normal,
    isomorphisms_all,
    lower_central_series,
    opposite_group,
    quotient,
    semidirect_product,
    subgroup_generated,
    wreath_product,
)

# a latin square with identity 0 that fails associativity at (1,1,2)
LOOP5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def test_table_validation_errors():
    with pytest.raises(NotLatinSquare):
        from_cayley_table([[0, 1], [0, 1]])
    with pytest.raises(NoIdentity):
        from_cayley_table([[1, 0, 2], [0, 2, 1], [2, 1, 0]])
    with pytest.raises(NotAssociative):
        from_cayley_table(LOOP5)
    with pytest.raises(NotLatinSquare):
        from_cayley_table([[0, 1], [1, 2]])


def test_s3_generation_convention(s3):
    # built from adjacent transpositions; composition applies the right
    # factor first
    assert [s3.label(g) for g in s3.elements()] == [
        "()", "(0 1)", "(1 2)", "(0 1 2)", "(0 2 1)", "(0 2)"]
    assert s3.mul(1, 2) == 3
    assert s3.mul(2, 1) == 4
    assert s3.inv(3) == 4
    assert not s3.is_abelian


def test_element_orders_and_centers(s3, d4, q8, heis3):
    assert q8.order_profile() == (1, 2, 4, 4, 4, 4, 4, 4)
    assert sorted(d4.element_order(g) for g in d4.elements()) == [
        1, 2, 2, 2, 2, 2, 4, 4]
    assert center(s3).order == 1
    assert center(d4).order == 2
    assert center(q8).order == 2
    assert center(heis3).order == 3


def test_derived_and_lower_central(s3, d4, heis3):
    assert derived_subgroup(s3).elements == (0, 3, 4)
    assert [t.order for t in lower_central_series(d4)] == [8, 2, 1]
    assert [t.order for t in lower_central_series(heis3)] == [27, 3, 1]
    assert [t.order for t in lower_central_series(s3)] == [6, 3]
    assert commutator_subgroup(s3).elements == derived_subgroup(s3).elements


def test_power_and_prod(s3):
    for g in s3.elements():
        acc = s3.identity
        for k in range(1, 7):
            acc = s3.mul(acc, g)
            assert s3.power(g, k) == acc
        assert s3.power(g, -1) == s3.inv(g)
        assert s3.power(g, 0) == 0
    assert s3.prod([1, 2, 1]) == s3.mul(s3.mul(1, 2), 1)


def test_subgroup_validation(s3):
    with pytest.raises(InvalidInput):
        Subgroup(s3, (0, 1, 3))  # not closed
    sub = subgroup_generated(s3, [1])
    assert sub.elements == (0, 1)
    assert subgroup_generated(s3, [3]).elements == (0, 3, 4)
    assert subgroup_generated(s3, [1, 3]).is_whole_group()


@pytest.mark.parametrize("name,count", [
    ("S3", 6), ("D4", 10), ("Q8", 6), ("A4", 10), ("Z6", 4), ("Z12", 6),
])
def test_subgroup_counts(name, count):
    G = corpus_group(name)
    subs = all_subgroups(G)
    assert len(subs) == count
    for sub in subs:
        assert naive_is_subgroup(G, sub.elements)


def test_all_subgroups_reach_nonabelian_members():
    # a perfect subgroup is only reachable if closure joins whole
    # subgroups, not single generators
    a5 = corpus_group("A5")
    a4_like = [s for s in all_subgroups(a5) if s.order == 12]
    assert len(a4_like) == 5


def test_normality(s3):
    assert is_normal(subgroup_generated(s3, [3]))
    assert not is_normal(subgroup_generated(s3, [1]))


def test_quotient(s3, d4):
    Q, proj = quotient(s3, subgroup_generated(s3, [3]))
    assert Q.order == 2
    assert proj.homomorphism
    Z, _ = quotient(d4, center(d4))
    assert is_isomorphic(Z, corpus_group("Z2xZ2")) is not None


@pytest.mark.parametrize("name,count", [
    ("S3", 6), ("Z4", 2), ("Z6", 2), ("Q8", 24), ("D4", 8), ("Z2xZ2", 6),
])
def test_automorphism_counts(name, count):
    G = corpus_group(name)
    auts = automorphisms(G)
    assert len(auts) == count
    for phi in auts:
        assert phi.homomorphism and phi.bijective


def test_isomorphism_checks(z4, s3):
    assert is_isomorphic(z4, corpus_group("Z2xZ2")) is None
    d6 = corpus_group("D6")
    model = direct_product(corpus_group("Z2"), s3).group
    phi = is_isomorphic(d6, model)
    assert phi is not None and phi.bijective
    assert is_isomorphic(corpus_group("A4"), d6) is None
    assert len(isomorphisms_all(s3, s3)) == 6


def test_hom_counts(s3, z6):
    assert len(all_homomorphisms(z6, z6)) == 6
    assert len(all_homomorphisms(s3, corpus_group("Z2"))) == 2
    assert len(all_homomorphisms(corpus_group("Z2"), s3)) == 4
    assert len(all_homomorphisms(s3, corpus_group("Z3"))) == 1


def test_group_map_validation(s3):
    with pytest.raises(NotHomomorphism):
        GroupMap.hom(s3, s3, [0, 1, 2, 3, 4, 4])
    phi = GroupMap.hom(s3, s3, [0, 2, 1, 4, 3, 5])
    assert phi.bijective
    assert phi.compose(phi.inverse()).images == tuple(s3.elements())
    assert fixed_point_free(GroupMap.automorphism(
        corpus_group("Z3"), [0, 2, 1]))


def test_exact_factorizations(s3, z6):
    fs = exact_factorizations(s3)
    assert len(fs) == 8
    for H, L in fs:
        assert H.order * L.order == 6
        assert set(H.elements) & set(L.elements) == {0}
    assert len(exact_factorizations(z6)) == 4
    # independent recomputation from the subgroup lattice
    subs = all_subgroups(s3)
    brute = [
        (H, L) for H in subs for L in subs
        if H.order * L.order == 6 and set(H.elements) & set(L.elements) == {0}
    ]
    assert len(brute) == len(fs)


def test_direct_product_coding(s3, z4):
    prod = direct_product(s3, z4)
    G = prod.group
    assert G.order == 24
    for g in G.elements():
        h, l = prod.decode(g)
        assert prod.encode((h, l)) == g
    a, b = prod.encode((1, 2)), prod.encode((2, 3))
    assert prod.decode(G.table[a][b]) == (s3.mul(1, 2), z4.mul(2, 3))


def test_semidirect_validation(z4):
    z2 = corpus_group("Z2")
    sdp = semidirect_product(z4, z2, [[0, 1, 2, 3], [0, 3, 2, 1]])
    assert sdp.group.order == 8
    assert is_isomorphic(sdp.group, corpus_group("D4")) is not None
    with pytest.raises(ActionNotHomomorphism):
        semidirect_product(z4, z2, [[0, 1, 2, 3], [1, 0, 3, 2]])


def test_wreath_orders():
    z2 = corpus_group("Z2")
    w = wreath_product(z2, z2)
    assert w.group.order == 8
    assert is_isomorphic(w.group, corpus_group("D4")) is not None
    z3 = corpus_group("Z3")
    assert wreath_product(z2, z3).group.order == 24


def test_opposite_group(s3):
    op = opposite_group(s3)
    for a in s3.elements():
        for b in s3.elements():
            assert op.table[a][b] == s3.table[b][a]
    assert is_isomorphic(op, s3) is not None


def test_generating_sequence(s3, q8):
    for G in (s3, q8):
        gens = generating_sequence(G)
        assert subgroup_generated(G, gens).is_whole_group()
        assert len(gens) <= 3


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        from_permutations([tuple(range(1, 70)) + (0,)], cap=50)
