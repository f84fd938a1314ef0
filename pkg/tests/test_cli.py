import json

import pytest

from sgtransform.cli import run


def out_of(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info_json(capsys):
    code, out, _ = out_of(capsys, ["info", "--gens", "6,11,13,15,16", "--json"])
    data = json.loads(out)
    assert code == 0
    assert (data["frobenius"], data["genus"], data["multiplicity"]) == (20, 11, 6)
    assert data["special_gaps"] == [20] and data["sub_frobenius"] == 14
    assert list(data)[:3] == ["conductor", "gaps", "min_generators"]


def test_info_round_trip_through_gaps(capsys):
    _, out, _ = out_of(capsys, ["info", "--small", "0,5,7,10:12", "--json"])
    first = json.loads(out)
    gaps = ",".join(map(str, first["gaps"]))
    _, out, _ = out_of(capsys, ["info", "--gaps", gaps, "--json"])
    assert json.loads(out) == first
    gens = ",".join(map(str, first["min_generators"]))
    _, out, _ = out_of(capsys, ["info", "--gens", gens, "--json"])
    assert json.loads(out) == first


def test_info_text(capsys):
    code, out, _ = out_of(capsys, ["info", "--gens", "3,5"])
    assert code == 0 and "symmetric" in out and "irreducible" in out


def test_info_bad_input(capsys):
    code, _, err = out_of(capsys, ["info", "--gens", "4,6"])
    assert code == 1 and "error" in err
    code, _, _ = out_of(capsys, ["info", "--small", "0,4,5:9"])
    assert code == 1
    code, _, _ = out_of(capsys, ["info"])
    assert code == 1


def test_transform_all_steps(capsys):
    code, out, _ = out_of(capsys, ["transform", "--small", "0,5,7,10:12", "--kind", "a", "--steps", "all", "--json"])
    data = json.loads(out)
    assert code == 0 and len(data["steps"]) == 3
    assert data["steps"][-1]["gaps"] == [1, 2, 3, 4, 5, 6, 7, 11]
    assert data["annotations"][0] == {"h": 9, "removed_m": 5, "e_before": 4, "e_after": 6}


def test_transform_outside_domain(capsys):
    code, _, err = out_of(capsys, ["transform", "--gens", "6,11,13,15,16", "--kind", "a"])
    assert code == 1 and "irreducible" in err


def test_tree_dot(capsys):
    code, out, _ = out_of(capsys, ["tree", "--kind", "A", "--genus", "8", "--left", "4", "--format", "dot"])
    assert code == 0
    assert out.count("[label=") == 31 and out.count("->") == 15


def test_tree_count_and_json(capsys):
    _, out, _ = out_of(capsys, ["tree", "--kind", "B", "--genus", "8", "--left", "4"])
    assert out.startswith("nodes 16 edges 15")
    _, out, _ = out_of(capsys, ["tree", "--kind", "A", "--genus", "8", "--left", "4", "--format", "json", "--leaves-only"])
    assert len(json.loads(out)["leaves"]) == 12


def test_tree_out_of_range(capsys):
    code, _, err = out_of(capsys, ["tree", "--kind", "A", "--genus", "8", "--left", "7"])
    assert code == 1 and "g-2" in err


def test_tree_node_limit(capsys):
    code, _, err = out_of(capsys, ["tree", "--kind", "B", "--genus", "10", "--left", "5", "--max-nodes", "3"])
    assert code == 1 and "partial" in err


def test_census_check(capsys):
    code, out, _ = out_of(capsys, ["census", "--genus", "10", "--check"])
    assert code == 0 and "methods agree" in out
    assert "total\t204\t204" in out


def test_wilf_scan(capsys):
    code, out, _ = out_of(capsys, ["wilf", "--max-genus", "20"])
    assert code == 0 and "0 violations" in out.splitlines()


def test_wilf_scan_cap(capsys):
    code, _, err = out_of(capsys, ["wilf", "--max-genus", "31"])
    assert code == 1 and "--stretch-43" in err


def test_wilf_leaf_check(capsys):
    code, out, _ = out_of(capsys, ["wilf", "--kind", "A", "--genus", "8", "--left", "4", "--json"])
    data = json.loads(out)
    assert code == 0 and data["certified"] and data["consistent"]


def test_wilf_findings_file(tmp_path, capsys):
    path = tmp_path / "f.jsonl"
    code, _, _ = out_of(capsys, ["wilf", "--max-genus", "10", "--eliahou", "--findings", str(path)])
    assert code == 0 and path.read_text() == ""


def test_experiments(capsys):
    code, out, _ = out_of(capsys, ["experiment", "child-edim", "--genus", "8", "--left", "4"])
    assert code == 0 and json.loads(out)["internal_nodes"] == 4
    code, out, _ = out_of(capsys, ["experiment", "leaf-overlap", "--max-genus", "6"])
    assert code == 0 and len(out.splitlines()) == 1 + 2 + 3


@pytest.mark.parametrize(
    "argv",
    [
        ["tree", "--kind", "B", "--genus", "9", "--left", "5", "--format", "dot"],
        ["tree", "--kind", "A", "--genus", "9", "--left", "4", "--format", "json"],
        ["census", "--genus", "9", "--check", "--json"],
        ["wilf", "--max-genus", "16"],
    ],
)
def test_output_independent_of_threads(capsys, argv):
    outputs = set()
    for threads in ("1", "2", "3", "1"):
        code, out, _ = out_of(capsys, argv + ["--threads", threads])
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1
