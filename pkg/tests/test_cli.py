import json

import pytest

from wpo_gap_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


def test_compare_incomparable(capsys):
    assert run(capsys, "compare", "--n", "2", "1()", "0(1())") == (1, "INCOMP")


def test_compare_le_and_eq(capsys):
    assert run(capsys, "compare", "--n", "2", "0(1())", "0(0(1()))") == (0, "LE")
    assert run(capsys, "compare", "0(0(),0())", "0(0(),0())") == (0, "EQ")
    assert run(capsys, "compare", "0(0())", "0()") == (1, "GE")


def test_compare_terms_and_multisets(capsys, tmp_path):
    assert run(capsys, "compare", "--kind", "term", "node[]", "node[node[]]") == (0, "LE")
    f = tmp_path / "c.poset"
    f.write_text("poset c\nelem x\nelem y\nle x y\n")
    assert run(capsys, "compare", "--kind", "ms", "--poset", str(f), "[x,x]", "[x,y]") == (0, "LE")
    assert run(capsys, "compare", "--poset", str(f), "0(@x)", "0(@y)") == (0, "LE")


def test_compare_json(capsys):
    code, out = run(capsys, "compare", "--format", "json", "0()", "0(0())")
    assert code == 0 and json.loads(out) == {"relation": "LE", "le": True, "ge": False}


def test_oracle_witness(capsys):
    assert run(capsys, "oracle", "--n", "2", "1()", "1(0())") == (0, "0 -> 0")
    assert run(capsys, "oracle", "--n", "2", "1()", "0(1())") == (1, "none")


def test_enum(capsys):
    assert run(capsys, "enum", "--n", "2", "--max", "2", "--count") == (0, "6")
    code, out = run(capsys, "enum", "--kind", "term", "--height", "1", "--max", "2")
    assert out.splitlines() == ["node[]", "node[node[]]", "node[node[];node[]]"]
    code, out = run(capsys, "enum", "--n", "2", "--max", "2", "--minus", "--format", "json")
    assert json.loads(out)["items"] == ["0()", "0(0())", "0(1())"]


def test_fold(capsys):
    assert run(capsys, "fold", "node[node[]]") == (0, "0(0())")


def test_goodpair(capsys):
    assert run(capsys, "goodpair", "0(0(),0())", "0(0())", "0(0(0()))") == (0, "1 2")
    assert run(capsys, "goodpair", "--n", "2", "0(1())", "1(0())") == (1, "none")


def test_selftest_zero_json(capsys):
    code, out = run(capsys, "selftest", "--budget", "zero", "--format", "json")
    reports = json.loads(out)
    assert code == 0 and len(reports) == 10
    assert all({"suite", "checked", "violations", "millis"} <= set(r) for r in reports)


def test_selftest_one_suite(capsys):
    code, out = run(capsys, "selftest", "--suite", "ms-oracle")
    assert code == 0 and out.startswith("PASS") and "ms-oracle" in out


@pytest.mark.parametrize("argv", [
    ["compare", "--n", "2", "3()", "0()"],
    ["compare", "0(", "0()"],
    ["fold", "node[leaf:x]"],
    ["compare", "--poset", "/no/such/file", "0()", "0()"],
    ["selftest", "--budget", "nope"],
])
def test_input_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_selftest_budget_incomplete(capsys, tmp_path):
    f = tmp_path / "big.json"
    f.write_text(json.dumps({"ms_posets": ["point"], "ms_size": 9}))
    code, out = run(capsys, "selftest", "--budget", str(f), "--suite", "ms-oracle")
    assert code == 3 and out.startswith("INCOMPLETE")
