import json
import pathlib
import subprocess
import sys

import pytest

from almostded.cli import main

SAMPLES = pathlib.Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def machine(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "machine")
    return code, [json.loads(line) for line in out.splitlines()]


def test_factor_two_levels(capsys):
    code, recs = machine(capsys, "factor", SAMPLES / "two_factors.json")
    assert code == 0
    his = [[c["hi"] for c in f] for f in recs[0]["factors"]]
    assert his == [["3"], ["1"]]


def test_factor_radical_single(capsys, tmp_path):
    f = tmp_path / "rad.json"
    f.write_text(json.dumps({"space": {"top": "w"}, "pieces": [{"cell": {"hi": "4"}, "value": 1}]}))
    code, recs = machine(capsys, "factor", f)
    assert code == 0 and len(recs[0]["factors"]) == 1


def test_factor_witness(capsys):
    code, recs = machine(capsys, "factor", SAMPLES / "not_continuous.json")
    assert code == 4
    assert recs[0]["continuous"] is False
    assert recs[0]["witness"] == [{"lo": "0", "hi": "w", "dmin": 1, "dmax": "inf"}]


def test_model_and_rank(capsys):
    code, recs = machine(capsys, "model", SAMPLES / "space_w2.json", "--sharp")
    assert code == 0 and recs[0]["sp_rank"] == 3 and recs[0]["sp_scattered"]
    assert len(recs[0]["strata"]) == 3
    code, recs = machine(capsys, "rank", SAMPLES / "space_w2.json", "--sp")
    assert code == 0 and recs[0]["sp_rank"] == 1


def test_invalid_chain(capsys):
    code, recs = machine(capsys, "model", SAMPLES / "space_w2.json", "--chain", SAMPLES / "bad_chain.json")
    assert code == 3
    assert recs[0]["condition"] == "not-in-derived" and recs[0]["stage"] == 1
    assert recs[0]["witness"] == "0"


def test_decompose_member_sigma(capsys):
    code, recs = machine(capsys, "decompose", SAMPLES / "gens_w2.json", "--stage", "1")
    assert code == 0
    assert recs[0]["rank"] == 3 and recs[0]["divisors"] == [1, 1, 2]
    assert recs[0]["exactness"]["additive"]
    code, recs = machine(capsys, "member", SAMPLES / "gens_w2.json")
    assert code == 0 and recs[0]["member"] and recs[0]["certificate"] == [3, 2, 0]
    code, recs = machine(capsys, "sigma-r", SAMPLES / "gens_w2.json")
    assert code == 0 and recs[0]["quotient_free"]


def test_colength(capsys):
    code, recs = machine(capsys, "colength", SAMPLES / "colength_w.json")
    assert code == 0 and recs[0]["tau"] == "inf"
    code, recs = machine(capsys, "colength", SAMPLES / "colength_w.json", "--stage", "1")
    assert recs[0]["tau"] == "0"
    code, recs = machine(capsys, "colength", SAMPLES / "colength_w.json", "--stage", "9")
    assert code == 3


def test_parse_error_exit(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"space": {"top": "w"}, "pieces": [{"cell": {"hi": "w"}, "value": 1.5}]}')
    code, recs = machine(capsys, "factor", f)
    assert code == 2
    assert recs[0]["field"] == "ideal.pieces[0].value"
    code, recs = machine(capsys, "factor", tmp_path / "missing.json")
    assert code == 2 and recs[0]["error"] == "parse"


@pytest.mark.parametrize("name", ["nu-laws", "factor-roundtrip", "length-identities"])
def test_suite_passes(capsys, name):
    code, recs = machine(capsys, "suite", name, "--seed", "42", "--count", "30")
    assert code == 0 and recs[0]["failures"] == 0 and recs[0]["cases"] == 30


def test_suite_failure_exit(capsys):
    # the product-closure part of the mi suite has known counterexamples
    code, recs = machine(capsys, "suite", "mi", "--seed", "42")
    assert code == 4 and recs[0]["witnesses"]


def test_machine_output_is_deterministic(capsys):
    outs = [run(capsys, "suite", "continuity", "--seed", "7", "--count", "25", "--format", "machine")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    other = run(capsys, "suite", "continuity", "--seed", "8", "--count", "25", "--format", "machine")[1]
    assert json.loads(other)["seed"] == 8


def test_demo(capsys):
    code, recs = machine(capsys, "demo-order-mismatch")
    assert code == 0 and recs[0]["incomparable"] and recs[0]["all_dominate"]


def test_bad_flags():
    for argv in (["suite", "nope"], ["suite", "mi", "--count", "0"], ["suite", "mi", "--seed", "-1"]):
        with pytest.raises(SystemExit) as e:
            main(argv)
        assert e.value.code != 0


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "almostded", "rank", str(SAMPLES / "space_w2.json"), "--format", "machine"],
        capture_output=True, text=True,
    )
    assert r.returncode == 0 and json.loads(r.stdout)["sp_rank"] == 3
