import json

import pytest

from rbgroups.cli import main
from rbgroups.corpus import corpus_group
from rbgroups.serialization import dumps, group_to_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err or out
    return json.loads(out)


def test_verify_valid(capsys):
    j = run_json(capsys, "verify", "--corpus", "S3", "--images", "0,1,1,0,0,1")
    assert j == {"group": "S3", "weight": 1, "valid": True, "witness": None}


def test_verify_invalid_witness(capsys):
    j = run_json(capsys, "verify", "--corpus", "S3", "--images", "0,1,2,3,4,5")
    assert j["valid"] is False and j["witness"] == [1, 2]


def test_verify_weight_minus_one(capsys):
    j = run_json(capsys, "verify", "--corpus", "S3",
                 "--images", "0,1,2,3,4,5", "--weight", "-1")
    assert j["valid"] is True


def test_group_file_input(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(dumps(group_to_json(corpus_group("Z4"))))
    j = run_json(capsys, "enumerate", "--group", str(path))
    assert j["count"] == 4


def test_enumerate_s3(capsys):
    j = run_json(capsys, "enumerate", "--corpus", "S3")
    assert j["count"] == 8 and j["method"] == "graph"
    assert [0, 1, 1, 0, 0, 1] in j["operators"]


def test_enumerate_weight_minus_one(capsys):
    j = run_json(capsys, "enumerate", "--corpus", "S3", "--weight", "-1")
    assert j["count"] == 8 and j["method"] == "graph+convert"
    assert [0, 1, 2, 3, 4, 5] in j["operators"]


def test_enumerate_brute(capsys):
    j = run_json(capsys, "enumerate", "--corpus", "Z4", "--method", "brute")
    assert j["method"] == "brute" and j["count"] == 4


def test_classify_with_reports(capsys):
    j = run_json(capsys, "classify", "--corpus", "S3", "--splitting")
    assert sorted(len(c["members"]) for c in j["classes"]) == [2, 6]
    assert j["non_splitting"] == []
    assert j["elementary_verdict"]["elementary"] is False


def test_classification_rejected_at_minus_one(capsys):
    code, out, err = run(capsys, "classify", "--corpus", "S3", "--weight", "-1")
    assert code == 1
    j = json.loads(out)
    assert j["error"] == "InvalidInput"


def test_construct_elementary(capsys):
    j = run_json(capsys, "construct", "--corpus", "Q8",
                 "--family", "elementary", "--variant", "b_minus1")
    assert j["valid"] is True
    assert j["operator"]["images"] == list(corpus_group("Q8").inverses)


def test_construct_splitting(capsys):
    j = run_json(capsys, "construct", "--corpus", "S3", "--family", "splitting",
                 "--kernel", "3", "--image", "1")
    assert j["operator"]["images"] == [0, 1, 1, 0, 0, 1]
    assert j["kernel"] == [0, 3, 4] and j["image"] == [0, 1]


def test_construct_power_refusal_is_answer(capsys):
    j = run_json(capsys, "construct", "--corpus", "S3", "--family", "power",
                 "--n", "1")
    assert j == {"operator": None, "valid": False, "witness": [1, 2]}


def test_construct_power_accepted(capsys):
    j = run_json(capsys, "construct", "--corpus", "Z6", "--family", "power",
                 "--n", "3")
    assert j["valid"] is True
    assert j["operator"]["images"] == [0, 3, 0, 3, 0, 3]


def test_construct_central(capsys):
    j = run_json(capsys, "construct", "--corpus", "D4", "--family", "central",
                 "--element", "1")
    assert j["valid"] is True
    j = run_json(capsys, "construct", "--corpus", "S3", "--family", "central",
                 "--element", "1")
    assert j == {"operator": None, "valid": False}


def test_construct_affine(capsys):
    j = run_json(capsys, "construct", "--corpus", "Z6", "--family", "affine",
                 "--a", "2", "--b", "4")
    assert j["valid"] is True
    j = run_json(capsys, "construct", "--corpus", "Z6", "--family", "affine",
                 "--a", "2", "--b", "3")
    assert j["valid"] is False


def test_construct_hom(capsys):
    j = run_json(capsys, "construct", "--corpus", "S3", "--family", "hom",
                 "--map", "0,1,1,0,0,1")
    assert j["valid"] is True


def test_construct_cascade(capsys):
    j = run_json(capsys, "construct", "--corpus", "Z2", "--family", "cascade",
                 "--n", "2")
    assert j["copies"] == 2
    assert len(j["operator"]["images"]) == 4


def test_derived_structure_and_word(capsys):
    j = run_json(capsys, "derived", "--corpus", "S3",
                 "--images", "0,1,1,0,0,1", "--word", "1:1,3:-1")
    assert j["order"] == 6
    assert j["structure"]["kernel"] == [0, 3, 4]
    assert j["word_value"] == 2


def test_derived_table(capsys):
    j = run_json(capsys, "derived", "--corpus", "Z4",
                 "--images", "0,2,0,2", "--table")
    assert len(j["circle_table"]) == 4


def test_extend_census_refutation(capsys):
    j = run_json(capsys, "extend", "--corpus", "S3",
                 "--gens", "1,2", "--images", "1,0")
    assert j["status"] == "no_extension"
    assert j["cond"] is True and j["via"] == "census"
    assert j["gbar"]["order"] == 4
    # with the condition holding, gbar is a full group payload
    assert j["gbar"]["kind"] == "table"
    assert len(j["gbar"]["table"]) == 4


def test_extend_collision(capsys):
    j = run_json(capsys, "extend", "--corpus", "S3",
                 "--gens", "1,2,5", "--images", "1,2,4")
    assert j["status"] == "no_extension" and j["cond"] is False
    assert j["witness"]["words"] == [[[0, 1], [2, -1]], []]
    # no quotient group exists here, so gbar stays an order-only stub
    assert "table" not in j["gbar"]


def test_extend_success(capsys):
    j = run_json(capsys, "extend", "--corpus", "S3",
                 "--gens", "1,2", "--images", "1,2")
    assert j["status"] == "extends"
    assert j["extension"]["images"] == [0, 1, 2, 4, 3, 5]


def test_extend_undecided(capsys):
    j = run_json(capsys, "extend", "--corpus", "S3",
                 "--gens", "1,2", "--images", "1,0", "--census-cap", "4")
    assert j["status"] == "undecided"


def test_lie_ring(capsys):
    j = run_json(capsys, "lie-ring", "--corpus", "Heis3")
    assert j["series_orders"] == [27, 3, 1]
    assert j["bracket_nonzeros"] == 432


def test_lie_ring_with_operator(capsys):
    d4 = corpus_group("D4")
    j = run_json(capsys, "lie-ring", "--corpus", "D4",
                 "--images", ",".join(str(d4.inverses[g]) for g in d4.elements()))
    assert j["induced"]["valid"] is True


def test_corpus_listing(capsys):
    j = run_json(capsys, "corpus")
    assert "Heis3" in j["names"] and len(j["names"]) == 27
    j = run_json(capsys, "corpus", "Q8")
    assert j["kind"] == "table" and len(j["table"]) == 8


def test_error_exit_codes(capsys):
    # domain errors: JSON on stdout, exit 1
    code, out, err = run(capsys, "construct", "--corpus", "S3",
                         "--family", "splitting", "--kernel", "3", "--image", "4")
    assert code == 1
    j = json.loads(out)
    assert j["error"] == "NotExactFactorization" and err == ""
    # malformed input: message on stderr, exit 2
    code, out, err = run(capsys, "verify", "--corpus", "S3", "--images", "0,1")
    assert code == 2 and out == "" and "--images" in err
    code, out, err = run(capsys, "derived", "--corpus", "S3",
                         "--images", "0,1,1,0,0,1", "--word", "x:y")
    assert code == 2 and out == "" and "syllable" in err


def test_missing_group_is_schema_error(capsys):
    code, out, err = run(capsys, "enumerate")
    assert code == 2 and err != ""


def test_threads_flag(capsys):
    j = run_json(capsys, "--threads", "4", "enumerate", "--corpus", "Z4")
    assert j["count"] == 4
    code, out, err = run(capsys, "--threads", "0", "enumerate", "--corpus", "Z4")
    assert code == 2 and "--threads" in err


def test_bad_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
