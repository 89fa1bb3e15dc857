import io
import json

import pytest

from paratorsion import corpus
from paratorsion.cli import main
from paratorsion.liealg import split_families


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


def test_check_ok():
    code, text = run("check", "0,0,0,12")
    assert code == 0 and "nilpotent True" in text and "unimodular True" in text


def test_check_jacobi_failure():
    code, text = run("check", "23,31,12,14")
    assert code == 1 and "de^4" in text and "234" in text


def test_check_parse_error_from_file(tmp_path, capsys):
    path = tmp_path / "bad.alg"
    path.write_text("salamon: 0,0,1x2\n")
    assert run("check", str(path))[0] == 2
    assert "position" in capsys.readouterr().err


def test_analyze_goldberg():
    code, rec = run_json("analyze", "0,0,0,12")
    assert code == 0
    assert rec["torsion"]["class"] == "W2" and not rec["torsion"]["parakahler"]
    assert rec["curvature"]["ricci_flat"] and rec["curvature"]["flat"]


def test_analyze_parakahler():
    code, rec = run_json("analyze", "24,0,0,0,0,35")
    assert code == 0 and rec["torsion"]["parakahler"]
    assert rec["curvature"]["ricci_flat"] and not rec["curvature"]["flat"]


@pytest.mark.parametrize("text", ["0,0,0,12", "14,25,36,14,25,36"])
def test_analyze_neg_v(text):
    _, plain = run_json("analyze", text)
    code, flipped = run_json("analyze", text, "--coframe", "neg-V")
    assert code == 0
    assert flipped["torsion"]["class"] == plain["torsion"]["class"]
    assert flipped["curvature"]["s"] == negated(plain["curvature"]["s"])


def negated(s):
    from fractions import Fraction
    return str(-Fraction(s))


def test_analyze_coframe_file(tmp_path):
    path = tmp_path / "swap.txt"
    path.write_text("0 0 1 0\n0 0 0 1\n1 0 0 0\n0 1 0 0\n")
    code, rec = run_json("analyze", "0,0,0,12", "--coframe", f"file:{path}")
    assert code == 0 and rec["torsion"]["class"] == "W6"


def test_analyze_odd_dimension():
    assert run("analyze", "0,0,12")[0] == 3


def test_analyze_jacobi_failure():
    assert run("analyze", "23,31,12,14")[0] == 3


def test_json_round_trip():
    code, text = run("analyze", "0,0,46,0,12,0", "--json")
    rec = json.loads(text)
    assert json.loads(json.dumps(rec)) == rec
    assert set(rec) == {"algebra", "torsion", "curvature", "agreement", "meta"}


def test_search_table1_family():
    code, reports = run_json("search", "table1.alg", "--family", "1", "--params", "λ=1,μ=1,k=0")
    assert code == 0
    assert all(reports[0]["family"]["facts"].values())
    assert reports[1]["search"]["outcome"] == "witness"


def test_search_abelian():
    code, reports = run_json("search", "0,0,0,0,0,0", "--splitting", "coords")
    assert code == 0
    assert [r["search"]["conditions"]["rank3"] for r in reports] == [False]


def test_search_row3_file(tmp_path):
    path = tmp_path / "row3.alg"
    path.write_text(split_families(corpus.table1_text())["3"])
    code, reports = run_json("search", str(path), "--splitting", "coords",
                             "--params", "λ=1,μ=2,k=0")
    assert code == 0
    assert reports[0]["search"]["outcome"] == "witness"
    assert reports[0]["search"]["verification"]["torsion"]["flags"] == ["W1"]


def test_search_bad_params():
    assert run("search", "table1.alg", "--family", "1", "--params", "lambda=1,mu=0")[0] == 3
    assert run("search", "table1.alg", "--family", "1", "--params", "lambda")[0] == 2


def test_search_enum():
    code, reports = run_json("search", "table1.alg", "--family", "1", "--params",
                             "lambda=1,mu=1", "--splitting", "enum:1", "--limit", "3")
    assert code == 0 and len(reports) == 1 + 3


def test_product_examples():
    code, rec = run_json("product", "0,0,0,12", "0,0,0,0,0,45")
    assert code == 0 and rec["torsion"]["class"] == "W2+W3"
    assert rec["curvature"]["ricci_flat"] and rec["agreement"]["compose_classes"]
    code, rec = run_json("product", "abelian", "abelian")
    assert code == 0 and rec["torsion"]["class"] == "0"
    code, rec = run_json("product", "0,0,0,12", "abelian-4")
    assert code == 0 and rec["torsion"]["class"] == "W2"


def test_corpus_command(monkeypatch):
    monkeypatch.setenv("PARATORSION_SEED", "7")
    code, rep = run_json("corpus", "--random", "3")
    assert code == 0 and rep["seed"] == 7
    assert all(r["ok"] for r in rep["results"])
