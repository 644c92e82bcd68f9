import json
from pathlib import Path

import pytest

from lie_gradings import cli, corpus
from lie_gradings.errors import FieldExtensionRequired, ParseError
from lie_gradings.exactmath.poly import Poly
from lie_gradings.formats import algebra_from_json, algebra_to_json
from lie_gradings.liealg import LieAlgebra

DATA = Path(__file__).resolve().parents[1] / "data" / "l6_10"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_algebra(tmp_path, brackets, dim=3, name="x.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"name": "x", "dim": dim, "brackets": [
        {"i": i, "j": j, "terms": [{"k": k, "coeff": "1"}]} for i, j, k in brackets]}))
    return str(path)


def test_maximal_json(capsys):
    code, out, _ = run(capsys, "maximal", "corpus:L_4_2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["rank"] == 3 and len(data["layers"]) == 4


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", write_algebra(tmp_path, [(1, 2, 3)]))[:2] == (0, "ok\n")
    code, out, _ = run(capsys, "validate", write_algebra(tmp_path, [(1, 2, 3), (1, 3, 3), (2, 3, 1)]),
                       "--format", "json")
    assert code == 2
    assert json.loads(out) == {"ok": False, "kind": "jacobi", "witness": [1, 2, 3, 1]}


def test_bad_files(capsys, tmp_path):
    assert run(capsys, "maximal", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "maximal", str(bad))[0] == 2
    assert run(capsys, "maximal", "corpus:L_9_9")[0] == 2


def test_stratify(capsys):
    code, out, _ = run(capsys, "stratify", "corpus:L_5_5", "--format", "json")
    assert code == 0 and json.loads(out)["stratifiable"] is False
    code, out, _ = run(capsys, "stratify", "corpus:L_4_2")
    assert code == 0 and out.startswith("stratifiable")


def test_field_extension_exit(capsys, monkeypatch):
    def needs_extension(g):
        raise FieldExtensionRequired(Poly([-1, -1, 1]))

    monkeypatch.setattr(cli, "maximal_grading", needs_extension)
    code, _, err = run(capsys, "maximal", "corpus:L_3_2")
    assert code == 3 and "x^2 - x - 1" in err


def test_derivations_and_enumerate(capsys):
    code, out, _ = run(capsys, "derivations", "corpus:L_3_2", "--format", "json")
    assert code == 0 and json.loads(out)["dimension"] == 6
    code, out, _ = run(capsys, "enumerate", "corpus:L_4_2", "--format", "json")
    counts = json.loads(out)["counts"]
    assert code == 0 and counts == {"classes": 11, "families": 11, "positive": 6, "quotients": 15}


def test_positive_and_heintze(capsys):
    code, out, _ = run(capsys, "positive", "corpus:L_4_2", "--format", "json")
    assert code == 0 and json.loads(out)["maxWeight"] == 4
    code, out, _ = run(capsys, "heintze", "corpus:L_3_2", "--format", "json")
    assert code == 0 and json.loads(out)["derivation"] == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "2"]]


def test_lqp(capsys):
    args = ["lqp", str(DATA / "algebra.json"), "--grading", str(DATA / "grading.json"), "--format", "json"]
    code, out, _ = run(capsys, *args, "--forms", str(DATA / "E0_2.json"), "--prev", str(DATA / "E0_1.json"))
    assert code == 0 and json.loads(out)["value"] == "1/10"
    code, _, err = run(capsys, *args, "--forms", str(DATA / "E0_2.json"))
    assert code == 1 and "previous" in err


def test_corpus_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and out.split() == corpus.names()
    code, out, _ = run(capsys, "corpus", "show", "L6,22(1)", "--format", "json")
    assert algebra_from_json(json.loads(out)) == corpus.get("L_6_22(1)")
    target = tmp_path / "rows.json"
    code, out, _ = run(capsys, "corpus", "table2", "L_3_2", "L_2_1", "--format", "json", "--output", str(target))
    rows = json.loads(target.read_text())
    assert code == 0 and out == ""
    assert [r["algebra"] for r in rows] == ["L_3_2", "L_2_1"]
    assert rows[0]["k"] == 2 and rows[0]["classes"] == 4 and rows[0]["positive"] == 2
    code, out, _ = run(capsys, "corpus", "table2")
    assert code == 0 and len(out.splitlines()) == 1


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("LIE_GRADINGS_THREADS", "2")
    assert cli.thread_cap() == 2
    monkeypatch.setenv("LIE_GRADINGS_THREADS", "nope")
    assert cli.thread_cap() >= 1


def test_parallel_rows_keep_order():
    names = ["L_4_3", "L_2_1", "L_3_2"]
    assert [r.name for r in cli.report_table2(names, workers=2)] == names


@pytest.mark.parametrize("name", ["L_3_2", "L_5_9", "L_6_24(1)"])
def test_algebra_json_round_trip(name):
    g = corpus.get(name)
    assert algebra_from_json(algebra_to_json(g)) == g


def test_parse_error_from_json():
    with pytest.raises(ParseError):
        algebra_from_json({"dim": 2, "brackets": [{"i": 1, "j": 3, "terms": []}]})
    assert algebra_from_json({"dim": 2, "brackets": []}) == LieAlgebra.abelian(2)
