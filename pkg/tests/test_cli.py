import json

import pytest

from fixitylab.cli import main


def run(capsys, argv):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_fixity_single_object(capsys):
    code, out, _ = run(capsys, ["fixity", "--group", "sym_4", "--stab-order", "6"])
    assert code == 0
    obj = json.loads(out)
    assert obj == {
        "group": "sym_4",
        "stabilizer_order": 6,
        "degree": 4,
        "fixity": 2,
        "profile": [[2, 4, 2], [2, 8, 0], [3, 3, 1], [4, 4, 0]],
    }


def test_output_deterministic(capsys):
    argv = ["fixity", "--group", "sym_4", "--stab-order", "6"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2


def test_profile_has_no_fixity_key(capsys):
    code, out, _ = run(capsys, ["profile", "--group", "sym_4", "--stab-order", "6"])
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"group", "stabilizer_order", "degree", "profile"}


def test_ambiguous_order_yields_array(capsys):
    code, out, _ = run(capsys, ["fixity", "--group", "sym_4", "--stab-order", "4"])
    assert code == 0
    objs = json.loads(out)
    assert isinstance(objs, list) and len(objs) == 3
    assert all(o["stabilizer_order"] == 4 for o in objs)


def test_descriptor_narrows_to_one(capsys):
    code, out, _ = run(
        capsys,
        ["fixity", "--group", "sym_4", "--stab-order", "4", "--stab-descriptor", "C4"],
    )
    assert code == 0
    obj = json.loads(out)
    assert isinstance(obj, dict)
    assert obj["stabilizer_order"] == 4


def test_no_matching_stabilizer(capsys):
    code, _, err = run(capsys, ["fixity", "--group", "sym_4", "--stab-order", "77"])
    assert code == 2
    assert "error:" in err


def test_stab_flags_exclusive(capsys, tmp_path):
    p = tmp_path / "u.grp"
    p.write_text("degree 4\n2 1 3 4\n")
    code, _, err = run(
        capsys,
        ["fixity", "--group", "sym_4", "--stab-order", "6", "--stab-file", str(p)],
    )
    assert code == 2
    assert "exclusive" in err


def test_stab_flags_required(capsys):
    code, _, err = run(capsys, ["fixity", "--group", "sym_4"])
    assert code == 2
    assert "required" in err


def test_stab_file(capsys, tmp_path):
    p = tmp_path / "u.grp"
    p.write_text("degree 4\n2 1 3 4\n")
    code, out, _ = run(capsys, ["fixity", "--group", "sym_4", "--stab-file", str(p)])
    assert code == 0
    obj = json.loads(out)
    assert obj["stabilizer_order"] == 2
    assert obj["degree"] == 12


def test_stab_file_not_subgroup(capsys, tmp_path):
    p = tmp_path / "u.grp"
    p.write_text("degree 5\n2 1 3 4 5\n")
    code, _, err = run(capsys, ["fixity", "--group", "alt_5", "--stab-file", str(p)])
    assert code == 2
    assert "error:" in err


def test_search(capsys):
    code, out, _ = run(capsys, ["search", "--group", "psl2_7"])
    assert code == 0
    obj = json.loads(out)
    assert obj["group"] == "psl2_7" and obj["k"] == 4
    assert obj["classes"] == [
        {"order": 2, "degree": 84, "fixity": 4},
        {"order": 6, "degree": 28, "fixity": 4},
    ]


def test_marks_row(capsys):
    code, out, _ = run(capsys, ["marks", "--group", "sym_4", "--stab-order", "6"])
    assert code == 0
    obj = json.loads(out)
    assert obj["marks"] == [4, 2, 0, 1, 0, 0, 0, 1]


def test_sylow_case(capsys):
    code, out, _ = run(capsys, ["sylow", "--group", "psl2_9", "--stab-order", "18"])
    assert code == 0
    obj = json.loads(out)
    assert obj["case"] == "e"
    assert obj["sylow3_order"] == 9
    assert obj["delta_size"] == 2
    assert obj["orbit_sizes"] == [[1, 2], [9, 2]]


def test_zoo(capsys):
    code, out, _ = run(capsys, ["zoo"])
    assert code == 0
    obj = json.loads(out)
    assert "m11" in obj["names"] and "m22" in obj["names"]
    assert "psl2_<q>" in obj["families"]


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        ["fixity", "--group", "sym_4", "--stab-order", "6", "--out", str(target)],
    )
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert text.endswith("\n")
    assert json.loads(text)["fixity"] == 2


def test_verify_pass(capsys, tmp_path):
    cat = tmp_path / "cat.json"
    cat.write_text(json.dumps({"claims": [{"id": "o27", "mode": "order27"}]}))
    code, out, err = run(capsys, ["verify", "--catalog", str(cat)])
    assert code == 0
    obj = json.loads(out)
    assert obj["counts"] == {"PASS": 1, "FAIL": 0, "SKIPPED": 0}
    assert "PASS" in err and "o27" in err


def test_verify_fail_exit_code(capsys, tmp_path):
    cat = tmp_path / "cat.json"
    cat.write_text(
        json.dumps(
            {
                "claims": [
                    {"id": "bad", "mode": "search", "group": "psl2_7", "expected": "none"},
                    {"id": "doc", "mode": "documented", "note": "n"},
                ]
            }
        )
    )
    code, out, err = run(capsys, ["verify", "--catalog", str(cat)])
    assert code == 1
    obj = json.loads(out)
    assert obj["counts"]["FAIL"] == 1 and obj["counts"]["SKIPPED"] == 1
    assert "FAIL" in err and "bad" in err


def test_verify_only_filter(capsys, tmp_path):
    cat = tmp_path / "cat.json"
    cat.write_text(
        json.dumps(
            {
                "claims": [
                    {"id": "bad", "mode": "search", "group": "psl2_7", "expected": "none"},
                    {"id": "doc", "mode": "documented", "note": "n"},
                ]
            }
        )
    )
    code, out, _ = run(capsys, ["verify", "--catalog", str(cat), "--only", "doc"])
    assert code == 0
    obj = json.loads(out)
    assert [c["id"] for c in obj["claims"]] == ["doc"]


def test_verify_missing_catalog(capsys, tmp_path):
    code, _, err = run(capsys, ["verify", "--catalog", str(tmp_path / "nope.json")])
    assert code == 2
    assert "error:" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as e:
        main(["fixity"])
    assert e.value.code == 2
    capsys.readouterr()


def test_unknown_group(capsys):
    code, _, err = run(capsys, ["fixity", "--group", "nope_9", "--stab-order", "2"])
    assert code == 2
    assert "error:" in err
