import json
import os

import pytest

import parcoh
from parcoh.cli import main

DATA = os.path.join(os.path.dirname(parcoh.__file__), "data")


def data(name):
    return os.path.join(DATA, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_wg(capsys):
    code, out, _ = run(capsys, "wg", "--tuple", data("picard.json"))
    assert code == 0
    assert "dim W = 3" in out


def test_wg_json_round_trip(capsys):
    code, out, _ = run(capsys, "wg", "--tuple", data("picard.json"), "--json")
    rep = json.loads(out)
    assert rep["dim_W"] == 3 and rep["formula"] == 3


def test_braid_act_identity(capsys):
    code, out, _ = run(capsys, "braid-act", "--tuple", data("picard.json"), "--word", "s1 s1^-1")
    assert code == 0
    with open(data("picard.json")) as fh:
        assert json.loads(out) == json.load(fh)


def test_monodromy(capsys):
    from parcoh.exactla import Mat
    code, out, _ = run(capsys, "monodromy", "--tuple", data("picard.json"),
                       "--moves", data("picard_moves.json"))
    assert code == 0
    mats = [Mat.from_json(m) for m in json.loads(out)]
    assert len(mats) == 5 and all(m.rows == 3 for m in mats)


def test_orbit(capsys, tmp_path):
    dot = tmp_path / "orbit.dot"
    code, out, _ = run(capsys, "orbit", "--group", data("klein504.json"),
                       "--type", "2a0,2a0,3a1,3a2", "--dot", str(dot), "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["classes"] == 90 and rep["orbit_size"] == 90
    assert rep["cover"]["genus"] == 0
    assert dot.read_text().startswith("digraph")


def test_scenario_picard(capsys):
    code, out, _ = run(capsys, "scenario", "picard")
    assert code == 0
    assert "PASS" in out and out.count("eta_") == 5


def test_deterministic(capsys):
    a = run(capsys, "scenario", "picard", "--json")[1]
    b = run(capsys, "scenario", "picard", "--json")[1]
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "timing"}
    assert strip(a) == strip(b)


@pytest.mark.parametrize("argv", [
    ["wg", "--tuple", "/nonexistent.json"],
    ["braid-act", "--tuple", "PICARD", "--word", "s9"],
    ["braid-act", "--tuple", "PICARD", "--word", "x1"],
    ["orbit", "--group", "KLEIN", "--type", "9z0"],
    ["scenario", "psl2", "--pmax", "7"],
])
def test_input_errors(capsys, argv):
    argv = [data("picard.json") if a == "PICARD" else data("klein504.json") if a == "KLEIN" else a
            for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"mats\": [}")
    code, _, err = run(capsys, "wg", "--tuple", str(bad))
    assert code == 2 and "line 1" in err
    bad.write_text(json.dumps({"mats": [{"e": [[{"n": 3, "c": ["0", "1"]}]]}] * 2}))
    code, _, err = run(capsys, "wg", "--tuple", str(bad))
    assert code == 2 and "at least 3" in err


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["wg", "--tuple", "x", "--bogus"])
    assert exc.value.code == 2
