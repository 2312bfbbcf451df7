import json
from pathlib import Path

import pytest

from helpers import exhaustive_census
from rbgroups.corpus import corpus_group
from rbgroups.enumeration import (
    brute_force_enumerate,
    classify,
    graph_enumerate,
    graph_of_operator,
    is_rb_elementary,
    simple_group_check,
    splitting_report,
)
from rbgroups.errors import InvalidInput, OrderCapExceeded
from rbgroups.operators import elementary, rb_operator, weight_convert

GOLDENS = Path(__file__).parent / "goldens"


def _golden_counts():
    with open(GOLDENS / "counts.json") as fh:
        return json.load(fh)


def test_census_counts_small():
    counts = _golden_counts()["census"]
    for name in ("Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "S3", "D4", "Q8",
                 "A4", "D6", "Z2xZ2", "Z4xZ2", "Z2xZ2xZ2"):
        G = corpus_group(name)
        assert len(graph_enumerate(G)) == counts[name], name


def test_golden_census_files(s3, z4):
    with open(GOLDENS / "census_s3.json") as fh:
        s3_golden = json.load(fh)
    got = sorted(graph_enumerate(s3).image_tuples())
    assert got == [tuple(x) for x in s3_golden["operators"]]
    with open(GOLDENS / "census_z4.json") as fh:
        z4_golden = json.load(fh)
    got = sorted(graph_enumerate(z4).image_tuples())
    assert got == [tuple(x) for x in z4_golden["operators"]]


def test_brute_equals_graph(s3, z6, q8):
    for G in (s3, z6, q8):
        brute = set(brute_force_enumerate(G).image_tuples())
        graph = set(graph_enumerate(G).image_tuples())
        assert brute == graph


def test_exhaustive_equals_brute_tiny():
    # the helper scans all n^n self-maps without assuming B(e) = e,
    # so agreement also proves validity forces that normalization
    for name in ("Z1", "Z2", "Z3", "Z4"):
        G = corpus_group(name)
        assert set(exhaustive_census(G)) == set(brute_force_enumerate(G).image_tuples())


def test_brute_cap(s3):
    with pytest.raises(OrderCapExceeded):
        brute_force_enumerate(s3, cap=5)


def test_graph_encoding_roundtrip(s3):
    for op in graph_enumerate(s3).operators:
        pts = graph_of_operator(op)
        assert len(pts) == s3.order
        rebuilt = [None] * s3.order
        for x, y in pts:
            rebuilt[s3.mul(x, s3.inverses[y])] = None  # decode domain point
        assert all(
            (s3.mul(g, op(g)), op(g)) in pts for g in s3.elements()
        )


def test_classify_s3(s3):
    census = classify(graph_enumerate(s3))
    sizes = sorted(len(c.members) for c in census.classes)
    assert sizes == [2, 6]
    by_size = {len(c.members): c for c in census.classes}
    assert by_size[2].members == (0, 3)
    assert by_size[6].members == (1, 2, 4, 5, 6, 7)


def test_classify_orbit_counts():
    counts = _golden_counts()["orbits"]
    for name in ("S3", "Z2xZ2", "Z4xZ2", "D4", "Q8", "A4"):
        census = classify(graph_enumerate(corpus_group(name)))
        assert len(census.classes) == counts[name], name


def test_elementary_verdict_z3():
    z3 = corpus_group("Z3")
    v = is_rb_elementary(z3)
    assert (v.elementary, v.total, v.orbit_count, v.non_elementary) == \
        (False, 3, 2, (1,))


def test_elementary_verdict_z2():
    # tilde swaps the two elementary maps, so they form one orbit
    v = is_rb_elementary(corpus_group("Z2"))
    assert v.elementary and v.total == 2 and v.orbit_count == 1


def test_splitting_report(s3):
    census = graph_enumerate(s3)
    rep = splitting_report(census)
    assert rep.non_splitting == ()
    assert len(rep.splitting) == 8
    for idx, (ker, im) in rep.splitting.items():
        op = census.operators[idx]
        assert set(ker) == {g for g in s3.elements() if op(g) == 0}


def test_simple_group_check_a5_shape():
    # the full A5 run is the business of the acceptance suite; here the
    # input guard and the S3 rejection
    with pytest.raises(InvalidInput):
        simple_group_check(corpus_group("S3"))


def test_weight_minus_one_census(s3):
    plus = graph_enumerate(s3)
    minus = graph_enumerate(s3, cap=2048)
    converted = sorted(weight_convert(op).images for op in plus.operators)
    # brute force at weight -1 must agree with converting the +1 census
    brute = set(brute_force_enumerate(s3, weight=-1).image_tuples())
    assert brute == set(converted)
    assert len(brute) == len(plus)


def test_census_contains_elementaries(d4):
    census = graph_enumerate(d4)
    images = set(census.image_tuples())
    assert elementary(d4, "b0").images in images
    assert elementary(d4, "b_minus1").images in images
