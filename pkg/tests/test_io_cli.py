import json
from pathlib import Path

import numpy as np
import pytest

from kloose import __version__
from kloose.cli import main
from kloose.constructions import circuit_matroid, extremal_k_loose, reed_muller_r1
from kloose.io import ParseError, envelope, format_matrix, parse_matrix, read_matrix, write_matrix
from kloose.randgen import random_matrix

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_round_trip_constructions():
    ms = [extremal_k_loose(r, k)[0] for r in range(2, 9) for k in range(r - 1)]
    ms += [reed_muller_r1(m) for m in range(2, 7)] + [circuit_matroid(r) for r in range(1, 8)]
    for M in ms:
        back = parse_matrix(format_matrix(M, ["note"]))
        assert back.matroid == M and back.comments == ("note",)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_round_trip_random(q):
    rng = np.random.default_rng(q)
    for _ in range(100):
        M = random_matrix(rng, q, int(rng.integers(0, 6)), int(rng.integers(0, 9)))
        back = parse_matrix(format_matrix(M)).matroid
        assert back == M and back.entries.tobytes() == M.entries.tobytes()


def test_file_round_trip(tmp_path):
    M, e = extremal_k_loose(5, 1)
    write_matrix(tmp_path / "m.txt", M, ["loose-element 5"])
    mf = read_matrix(tmp_path / "m.txt")
    assert mf.matroid == M and mf.loose_element == e


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("", 1, 1),
        ("2 2\n", 1, 1),
        ("6 1 1\n1\n", 1, 1),
        ("2 2 2\n1 0\n0 x\n", 3, 3),
        ("3 1 3\n0 1  3\n", 2, 6),
        ("2 2 2\n1 0 1\n", 2, 1),
        ("2 2 2\n# c\n1 0\n", 4, 1),
        ("2 1 2\n1 0\n0 1\n", 3, 1),
    ],
)
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_matrix(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_comments_anywhere():
    mf = parse_matrix("2 1 2\n# a\n\n1 1\n# b\n")
    assert mf.comments == ("a", "b") and mf.matroid.n == 2


def test_envelope_schema():
    doc = envelope("analyze", [], circuit_matroid(3), seed=4)
    assert set(doc) == {"tool_version", "command", "field", "matroid", "results", "seed"}
    assert doc["field"] == {"q": 2, "p": 2, "m": 1} and doc["matroid"] == {"rank": 3, "n": 4}
    assert doc["tool_version"] == __version__


def _write(tmp_path, M, name="m.txt"):
    p = tmp_path / name
    write_matrix(p, M)
    return p


def test_golden_analyze(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", _write(tmp_path, circuit_matroid(5)), "--json")
    assert code == 0 and out == (GOLDEN / "analyze_circuit5.json").read_text()


def test_golden_bounds(tmp_path, capsys):
    code, out, _ = run(capsys, "bounds", _write(tmp_path, extremal_k_loose(5, 1)[0]), "--theorem", "T1.1", "--k", 1, "--json")
    assert code == 0 and out == (GOLDEN / "bounds_extremal_5_1.json").read_text()


def test_golden_verify_table(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "table-1-6", "--json")
    assert code == 0 and out == (GOLDEN / "verify_table.json").read_text()


def test_analyze_examples(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", _write(tmp_path, extremal_k_loose(5, 1)[0]), "--element", 5, "--k", 1, "--json")
    res = json.loads(out)["results"][0]
    assert code == 0 and res["local_girth"] == 5 and res["looseness_index"] == 1 and res["is_k_loose"]
    code, out, _ = run(capsys, "analyze", _write(tmp_path, reed_muller_r1(5)), "--k", 3)
    assert code == 0 and "paving index 3" in out and "3-paving: True" in out


def test_construct_examples(tmp_path, capsys):
    out = tmp_path / "e.txt"
    assert run(capsys, "construct", "extremal", "--rank", 5, "--k", 1, "-o", out)[0] == 0
    mf = read_matrix(out)
    assert mf.matroid.entries.shape == (5, 10)
    assert mf.comments == ("construct extremal r=5 k=1", "loose-element 5")
    code, text, _ = run(capsys, "construct", "circuit", "--rank", 7)
    assert code == 0 and parse_matrix(text).matroid.entries.shape == (7, 8)
    code, text, _ = run(capsys, "construct", "reed-muller", "--m", 4)
    assert parse_matrix(text).matroid.entries.shape == (5, 16)
    assert run(capsys, "construct", "extremal", "--rank", 3, "--k", 2)[0] == 2
    assert run(capsys, "construct", "reed-muller")[0] == 2


def test_bounds_examples(tmp_path, capsys):
    code, out, _ = run(capsys, "bounds", _write(tmp_path, reed_muller_r1(5)), "--theorem", "T1.4", "--k", 3, "--json")
    assert code == 0 and json.loads(out)["results"][0]["verdict"] == "hypothesis-not-met"
    code, out, _ = run(capsys, "bounds", _write(tmp_path, circuit_matroid(9)), "--theorem", "C3.4", "--k", 2, "--json")
    res = json.loads(out)["results"][0]
    assert code == 0 and res["verdict"] == "holds" and res["escape"] == "circuit"
    code, out, _ = run(capsys, "bounds", _write(tmp_path, reed_muller_r1(4)), "--theorem", "all")
    assert code == 0 and "C1.6" in out and "T3.1" not in out


def test_bounds_violation_exit_code(tmp_path, capsys, monkeypatch):
    import kloose.bounds as b

    monkeypatch.setattr(b, "bound_size_one_loose", lambda r, k: 9)
    code, out, _ = run(capsys, "bounds", _write(tmp_path, extremal_k_loose(5, 1)[0]), "--theorem", "T1.1", "--k", 1)
    assert code == 1 and "counterexample" in out


def test_usage_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2 2\n1 0\n0 5\n")
    code, _, err = run(capsys, "analyze", bad)
    assert code == 2 and "line 3, column 3" in err
    code, _, err = run(capsys, "bounds", _write(tmp_path, circuit_matroid(5)), "--theorem", "T1.1")
    assert code == 2 and "needs k" in err
    code, _, _ = run(capsys, "analyze", tmp_path / "missing.txt")
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nope"])
    assert info.value.code == 2


def test_search_cli(capsys, monkeypatch):
    code, out, _ = run(capsys, "search", "--rank", 5, "--k", 1, "--mode", "nonexistence", "--json")
    res = json.loads(out)["results"][0]
    assert code == 0 and res["status"] == "confirmed" and res["exhausted"]
    code, out, _ = run(capsys, "search", "--rank", 4, "--k", 1)
    assert code == 0 and "best size: 8" in out
    monkeypatch.setenv("KLOOSE_THREADS", "3")
    from kloose.cli import build_parser

    assert build_parser().parse_args(["search", "--rank", "4", "--k", "1"]).threads == 3
