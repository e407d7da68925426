import json
import subprocess
import sys
from pathlib import Path

import pytest

from schreierlab.cli import main
from schreierlab.io import ParseError, load_algebra, load_hom, load_point, load_template, sniff
from schreierlab.terms import GROUP_CONJUGATION

DATA = Path(__file__).resolve().parent.parent / "data"


def run(argv, capsys):
    code = main(["--format", "machine"] + argv)
    out = capsys.readouterr().out
    report = json.loads(out)
    assert report["exit_code"] == code
    return code, report


# ---------------------------------------------------------------- parsing

def test_round_trip_of_exported_files():
    A = load_algebra(DATA / "mag-counterexample.json")
    assert A.label(A.plus[1][0]) == "a" and [A.label(v) for v in A.plus[1]] == ["a", "0", "0"]
    p = load_point(DATA / "mag-point.json")
    assert p.kernel.labels() == ["0"]
    assert load_point(DATA / "mag-counterexample-point.json") == p
    h = load_hom(DATA / "mag-to-c2.json")
    assert h.map == (0, 1, 1)
    assert load_template(str(DATA / "group_conjugation.json")).shape == GROUP_CONJUGATION.shape
    assert sniff(DATA / "c2.json") == "algebra" and sniff(DATA / "direct.json") == "template"


def test_unknown_fields_rejected(tmp_path):
    obj = json.loads((DATA / "c2.json").read_text())
    obj["colour"] = "red"
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(obj))
    with pytest.raises(ParseError, match="unknown fields"):
        load_algebra(f)


def test_unknown_element_rejected(tmp_path):
    obj = json.loads((DATA / "c2.json").read_text())
    obj["tables"]["+"][1][1] = "7"
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(obj))
    with pytest.raises(ParseError, match="unknown element"):
        load_algebra(f)


def test_truncated_file_reports_position(tmp_path):
    text = (DATA / "c2.json").read_text()
    f = tmp_path / "trunc.json"
    f.write_text(text[: len(text) // 2])
    with pytest.raises(ParseError) as exc:
        load_algebra(f)
    assert exc.value.line is not None


# ---------------------------------------------------------------- validate

def test_validate_c2(capsys):
    code, rep = run(["validate", str(DATA / "c2.json")], capsys)
    assert code == 0


def test_validate_magma_declared_monoid(capsys):
    code, rep = run(["validate", str(DATA / "mag-declared-monoid.json")], capsys)
    assert code == 2
    (entry,) = rep["verdicts"].values()
    v = entry["violations"][0]
    assert v["law"] == "associativity" and v["witness"] == ["a", "a", "b"]


def test_validate_as_other_class(capsys):
    code, _ = run(["validate", str(DATA / "mag-counterexample.json"), "--as", "monoid"], capsys)
    assert code == 2
    code, _ = run(["validate", str(DATA / "mag-counterexample.json")], capsys)
    assert code == 0


def test_validate_homs(capsys):
    assert run(["validate", str(DATA / "mag-to-c2.json")], capsys)[0] == 0
    code, rep = run(["validate", str(DATA / "c2-swap.json")], capsys)
    assert code == 2
    (entry,) = rep["verdicts"].values()
    assert entry["violations"][0]["detail"] == "constant not preserved"


def test_validate_truncated(tmp_path, capsys):
    f = tmp_path / "t.json"
    f.write_text('{"name": "C2", "class": "group", "elem')
    code, rep = run(["validate", str(f)], capsys)
    assert code == 1 and rep["error"]["type"] == "ParseError"


def test_missing_file(capsys):
    code, _ = run(["validate", "/nonexistent/x.json"], capsys)
    assert code == 1


# ---------------------------------------------------------------- classify

def test_classify_diagonal(capsys):
    code, rep = run(["classify", str(DATA / "c2-diagonal.json")], capsys)
    v = rep["verdicts"]
    assert code == 0
    assert v["right_homogeneous"] and v["left_homogeneous"] and v["strong"]
    assert v["templates"]["direct"]["retraction"] == {
        "(0,0)": "(0,0)", "(1,1)": "(0,0)", "(1,0)": "(1,0)", "(0,1)": "(1,0)"}
    assert all(v["templates"]["direct"]["S_axioms"].values())


def test_classify_magma_point(capsys):
    code, rep = run(["classify", str(DATA / "mag-point.json")], capsys)
    assert code == 0
    assert not rep["verdicts"]["strong"] and rep["witnesses"]["strong"] == ["0", "a"]
    assert "retraction" not in rep["verdicts"]["templates"]["direct"]


def test_classify_identity_point(capsys):
    code, rep = run(["classify", str(DATA / "identity-c2-by-ref.json")], capsys)
    assert code == 0 and rep["verdicts"]["homogeneous"]
    assert set(rep["verdicts"]["templates"]["direct"]["retraction"].values()) == {"0"}


def test_classify_with_inapplicable_template(capsys):
    code, rep = run(["classify", str(DATA / "mag-point.json"), "--template",
                     str(DATA / "group_conjugation.json")], capsys)
    assert code == 1 and rep["error"]["type"] == "TemplateClassError"


def test_classify_with_non_splitting_template(capsys):
    code, rep = run(["classify", "builtin:c2-diagonal", "--template", str(DATA / "slot_a_only.json")], capsys)
    assert code == 1 and rep["error"]["type"] == "SplittingIdentityError"


def test_classify_group_conjugation(capsys):
    code, rep = run(["classify", "builtin:c2-diagonal", "--template", "group-conjugation"], capsys)
    assert code == 0 and rep["verdicts"]["templates"]["group-conjugation"]["holds"]


# ---------------------------------------------------------------- other verbs

def test_words(capsys):
    code, rep = run(["words", "--max-len", "4"], capsys)
    assert code == 0 and sorted(rep["verdicts"]["words"]) == sorted(["1̲1̄", "1̄1̲"])
    code, rep = run(["words", "--max-len", "1"], capsys)
    assert code == 0 and rep["verdicts"]["words"] == []
    code, rep = run(["words", "--max-len", "6"], capsys)
    assert code == 0 and rep["verdicts"]["count"] == 2


def test_special_and_loop(capsys):
    code, rep = run(["special", "--algebra", "builtin:heyting-3-chain"], capsys)
    assert code == 0 and not rep["verdicts"]["s_special"]
    assert rep["verdicts"]["diagnostic"]["element"] == "(T,m)"
    code, rep = run(["loop", "--algebra", str(DATA / "c4.json")], capsys)
    assert rep["verdicts"]["table"][3] == ["3", "2", "1", "0"]


def test_protomodular(capsys):
    code, rep = run(["protomodular", "--algebra", "builtin:c2", "--catalog", "unitary-magma"], capsys)
    assert code == 0 and rep["verdicts"]["result"] == "counterexample"
    assert rep["witnesses"]["non_strong_subalgebra"] == ["0", "1"]
    code, rep = run(["protomodular", "--algebra", "builtin:heyting-3-chain"], capsys)
    assert rep["verdicts"]["result"] == "all-points-strong-within-bound"


def test_sweep_refusals(capsys):
    assert run(["sweep", "--size", "0"], capsys)[0] == 1
    assert run(["sweep", "--class", "unitary-magma", "--size", "4"], capsys)[0] == 1


def test_sweep_small_monoids(capsys):
    code, rep = run(["sweep", "--class", "monoid", "--size", "3", "--probes", "3"], capsys)
    assert code == 0
    assert all(v["ok"] for v in rep["verdicts"].values())
    assert rep["counts"]["points"] == 32


def test_sweep_magmas_finds_non_strong_point(capsys):
    code, rep = run(["sweep", "--class", "unitary-magma", "--size", "3"], capsys)
    assert code == 0
    assert rep["witnesses"]["first_non_strong_point"] == "Point(mag3_0->mag2_0, f=(0, 1, 1), s=(0, 1))"


def test_examples_run_all(capsys):
    code, rep = run(["examples", "--run-all"], capsys)
    assert code == 0 and rep["verdicts"]["all_ok"]


def test_global_flags_after_verb(capsys):
    code = main(["words", "--max-len", "2", "--format", "machine", "--timing"])
    rep = json.loads(capsys.readouterr().out)
    assert code == 0 and "timing_seconds" in rep


def test_human_format(capsys):
    assert main(["classify", "builtin:c2-diagonal"]) == 0
    out = capsys.readouterr().out
    assert "right_homogeneous: pass" in out and "exit_code: 0" in out


# ---------------------------------------------------------------- process level

def _cli(*args):
    return subprocess.run([sys.executable, "-m", "schreierlab", "--format", "machine", *args],
                          capture_output=True, text=True)


def test_byte_identical_reports():
    a = _cli("classify", str(DATA / "c2-diagonal.json"))
    b = _cli("classify", str(DATA / "c2-diagonal.json"))
    assert a.returncode == 0 and a.stdout == b.stdout


def test_process_exit_codes():
    assert _cli("validate", str(DATA / "c2.json")).returncode == 0
    assert _cli("validate", str(DATA / "mag-declared-monoid.json")).returncode == 2
    assert _cli("sweep", "--size", "0").returncode == 1
