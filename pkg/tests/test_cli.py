import json
import random
import re

import pytest

from morseasym import LaurentPoly, direct_sum, tau
from morseasym.cli import main
from morseasym.document import DocumentError, dumps, loads
from strategies import random_univariate_complex

NUM = re.compile(r"(?<![A-Za-z_+^\d])-?\d+(?:/\d+)?(?![A-Za-z_\d])")


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


@pytest.fixture
def docs(tmp_path):
    files = {
        "tau": tau("2+2*t", 0),
        "two": direct_sum(tau("2+2*t", 0), tau("6+6*t", 0)),
        "circle": tau("t-1", 0),
        "plane": tau("2+2*t1*t2", 0, 2),
    }
    out = {}
    for name, C in files.items():
        path = tmp_path / f"{name}.json"
        path.write_text(dumps(C))
        out[name] = str(path)
    bad = tmp_path / "bad.json"
    bad.write_text('{"lattice_rank": 1, "ranks": [1, 1, 1],\n "boundaries": [[["1"]], [["t"]]]}')
    out["broken"] = str(bad)
    junk = tmp_path / "junk.json"
    junk.write_text('{"lattice_rank": 1,\n  "ranks": [1 1]}')
    out["junk"] = str(junk)
    mat = tmp_path / "mat.json"
    mat.write_text("[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]")
    out["matrix"] = str(mat)
    return out


def test_document_round_trip_is_byte_stable():
    rng = random.Random(12)
    for _ in range(20):
        C = random_univariate_complex(rng)
        text = dumps(C)
        assert loads(text) == C
        assert dumps(loads(text)) == text
    C = tau("2+t1^-1*t2^3", 1, 2)
    assert dumps(loads(dumps(C))) == dumps(C)


def test_document_accepts_strings_and_merges_terms():
    C = loads('{"lattice_rank": 1, "ranks": [1, 1], "boundaries": '
              '[[[[[1, [0]], [1, [0]], [2, [1]]]]]]}')
    assert C.boundary(1)[0, 0] == LaurentPoly.parse("2+2*t")
    D = loads('{"lattice_rank": 1, "ranks": [1, 1], "boundaries": [[["2+2t"]]]}')
    assert C == D


@pytest.mark.parametrize("text, fragment", [
    ('{"lattice_rank": 1,\n "ranks": [1 1]}', "line 2 column 14"),
    ('{"lattice_rank": 1, "ranks": [1, 1], "boundaries": [[["2+"]]]}', "position 2"),
    ('{"lattice_rank": 1, "ranks": [1, 1], "boundaries": [[[[[1, [0, 0]]]]]]}', "boundaries[0][0][0][0]"),
    ('{"ranks": [1]}', "missing field"),
    ('[1, 2]', "must be an object"),
])
def test_document_errors(text, fragment):
    with pytest.raises(DocumentError) as info:
        loads(text)
    assert fragment in str(info.value)


def test_validate(capsys, docs):
    assert run(capsys, "validate", docs["circle"])[0] == 0
    status, _, err = run(capsys, "validate", docs["broken"])
    assert status == 1 and "d_1 d_2 != 0 at (0, 0)" in err
    status, _, err = run(capsys, "validate", docs["junk"])
    assert status == 1 and "line 2 column" in err


def test_invariants(capsys, docs):
    status, out, _ = run(capsys, "invariants", docs["two"])
    assert status == 0 and "bound B+2Q = 4" in out
    status, out, _ = run(capsys, "invariants", docs["circle"], "--json")
    assert json.loads(out)["invariants"]["bound"] == 0
    status, _, err = run(capsys, "invariants", docs["plane"], "--xi", "0,0")
    assert status == 2 and "non-zero" in err


def test_mu(capsys, docs):
    status, out, _ = run(capsys, "mu", docs["tau"], "--xi", "1", "--kmax", "10", "--json")
    rep = json.loads(out)
    assert status == 0
    assert [r["mu"] for r in rep["mu_series"]] == [2 * k for k in range(1, 11)]
    assert rep["fit"]["slope"] == "2" and rep["predicted_slope"] == 2 and rep["agree"]
    status, out, _ = run(capsys, "mu", docs["circle"], "--kmax", "10", "--json")
    rep = json.loads(out)
    assert rep["fit"]["slope"] == "0" and rep["predicted_slope"] == 0
    assert max(r["mu"] for r in rep["mu_series"]) <= 2
    status, out, _ = run(capsys, "mu", docs["plane"], "--xi", "1,0", "--json")
    rep = json.loads(out)
    assert status == 2 and rep["flags"]["oracle_refused"]
    status, out, _ = run(capsys, "mu", docs["plane"], "--xi", "1,1", "--augment", "--json")
    assert status == 0 and json.loads(out)["agree"]


def test_mu_table(capsys, docs):
    status, out, _ = run(capsys, "mu", docs["tau"], "--kmax", "6", "--table")
    assert out.splitlines() == [f"{k}\t{2 * k}\t{2 * k}" for k in range(1, 7)]
    status, _, err = run(capsys, "mu", docs["tau"], "--kmax", "5")
    assert status == 1 and "window too short" in err


def test_cover(capsys, docs):
    status, out, _ = run(capsys, "cover", docs["circle"], "--k", "3", "--json")
    row = json.loads(out)["rows"][0]
    assert (row["morse"], row["prediction"], row["residual"]) == (2, 0, 2)
    status, out, _ = run(capsys, "cover", docs["tau"], "--k", "8", "--table", "--json")
    assert {r["residual"] for r in json.loads(out)["rows"]} == {0}
    status, out, _ = run(capsys, "cover", docs["plane"], "--quotient", "2", "--json")
    assert json.loads(out)["rows"][0]["ranks"] == [4, 4]
    assert run(capsys, "cover", docs["plane"], "--k", "2")[0] == 2


def test_make(capsys, tmp_path):
    status, out, _ = run(capsys, "make", "tau", "--rho", "2+2t", "--dim", "0")
    assert status == 0 and loads(out).boundary(1)[0, 0] == LaurentPoly.parse("2+2*t")
    status, out, _ = run(capsys, "make", "principal", "--b", "1,0", "--a0", "2+2t")
    path = tmp_path / "p.json"
    path.write_text(out)
    assert status == 0 and run(capsys, "validate", str(path))[0] == 0
    status, _, err = run(capsys, "make", "principal", "--b", "1", "--a0", "2+2t,3+3t")
    assert status == 1 and "does not divide" in err


def test_snf(capsys, docs):
    status, out, _ = run(capsys, "snf", docs["matrix"], "--json")
    rep = json.loads(out)
    assert rep["divisors"] == [2, 6, 12] and rep["verified"]


def test_hyperplanes(capsys, docs):
    status, out, _ = run(capsys, "hyperplanes", docs["plane"], "--xi", "1,-1", "--json")
    rep = json.loads(out)
    assert rep["genericity"]["excluded_by"] == [1, 1]
    assert not rep["flags"]["generic_certified"]


@pytest.mark.parametrize("argv", [
    ["invariants", "two"],
    ["invariants", "plane", "--xi", "1,-1"],
    ["mu", "tau", "--kmax", "6"],
    ["cover", "tau", "--k", "4", "--table"],
    ["cover", "plane", "--quotient", "2"],
    ["snf", "matrix"],
    ["hyperplanes", "plane", "--xi", "1,1"],
    ["validate", "circle"],
])
def test_json_contains_every_human_number(capsys, docs, argv):
    argv = [docs.get(a, a) for a in argv]
    _, human, _ = run(capsys, *argv)
    _, machine, _ = run(capsys, *argv, "--json")
    missing = set(NUM.findall(human)) - set(NUM.findall(machine))
    assert not missing, missing


def test_report_header(capsys, docs):
    import hashlib
    _, out, _ = run(capsys, "validate", docs["circle"], "--json")
    rep = json.loads(out)
    assert rep["command"][:2] == ["morseasym", "validate"]
    with open(docs["circle"], "rb") as fh:
        assert rep["input_sha256"] == hashlib.sha256(fh.read()).hexdigest()
