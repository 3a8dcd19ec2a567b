import json

import numpy as np
import pytest

from stripgain.cli import main


def write_model(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    return code, json.loads(out)


@pytest.fixture
def first_order(tmp_path):
    return write_model(tmp_path / "g.json", {"kind": "tf", "num": [1.0], "den": [1.0, 1.0]})


@pytest.fixture
def unstable(tmp_path):
    return write_model(
        tmp_path / "u.json",
        {"kind": "ss", "A": [[1.0]], "B": [[1.0]], "C": [[0.5]], "D": [[0.0]]},
    )


def test_norm_line(capsys, first_order):
    code, env = run_json(capsys, ["norm", first_order, "--line", "0", "--tol", "1e-8"])
    assert code == 0
    assert env["command"] == "norm"
    assert env["results"]["value"] == pytest.approx(1.0, abs=1e-6)
    assert len(env["inputs"]) == 1 and len(env["inputs"][0]["sha256"]) == 64


def test_norm_strip_and_degenerate(capsys, tmp_path):
    model = write_model(
        tmp_path / "m.json",
        {"kind": "tf", "num": [1.0], "den": [-3.0, 2.0, 1.0]},
    )
    code, env = run_json(capsys, ["norm", model, "--strip", "0,2"])
    assert code == 0
    assert env["results"]["mode"] == "strip"
    assert env["results"]["value"] == pytest.approx(1.0 / 3.0, abs=1e-5)

    code, env = run_json(capsys, ["norm", model, "--strip", "0.5,0.5"])
    assert code == 0
    assert env["results"]["mode"] == "line"
    assert env["warnings"]


def test_norm_grid_method(capsys, first_order):
    code, env = run_json(capsys, ["norm", first_order, "--line", "0.5", "--method", "grid"])
    assert code == 0
    assert env["results"]["value"] == pytest.approx(2.0, abs=1e-6)


def test_dominance_envelope(capsys, unstable):
    code, env = run_json(capsys, ["dominance", unstable, "--p", "1", "--rate", "0.5"])
    assert code == 0
    r = env["results"]
    assert r["dominant"] is True
    assert r["epsilon"] > 0
    assert r["lmi_residual"] <= 0


def test_dominance_failure_exits_2(capsys, unstable):
    code, out = run(capsys, ["dominance", unstable, "--p", "0", "--rate", "0.5"])
    assert code == 2
    env = json.loads(out)
    assert env["error"]["type"] == "NotPDominant"
    assert env["error"]["actual"] == 1


def test_gain_with_certificate(capsys, unstable):
    code, env = run_json(
        capsys,
        ["gain", unstable, "--p", "1", "--strip", "0.5,1.5", "--certificate"],
    )
    assert code == 0
    r = env["results"]
    assert r["gamma"] == pytest.approx(1.0 / 3.0, abs=1e-5)
    assert r["boundary_gammas"][1] == pytest.approx(0.2, abs=1e-5)
    assert r["small_gain_margin"] == pytest.approx(3.0, abs=1e-4)
    assert r["certificate"] is not None
    assert r["certificate"]["lmi_residual"] <= 0


def test_smallgain_conclusive(capsys, tmp_path, unstable):
    one = write_model(
        tmp_path / "one.json",
        {"kind": "ss", "A": [], "B": [], "C": [[]], "D": [[1.0]]},
    )
    code, env = run_json(
        capsys,
        ["smallgain", unstable, one, "--p1", "1", "--p2", "0", "--strip", "0.5,1.5"],
    )
    assert code == 0
    assert env["results"]["conclusive"] is True
    assert env["results"]["closed_p"] == 1
    assert not env["warnings"]


def test_nyquist_csv_schema(capsys, first_order):
    code, out = run(capsys, ["nyquist", first_order, "--line", "0", "--points", "5"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "omega,re,im,mag,disk_radius"
    assert len(lines) == 6
    first = [float(x) for x in lines[1].split(",")]
    assert first[0] == 0.0
    assert first[1] == pytest.approx(1.0)


def test_nyquist_out_file(capsys, tmp_path, first_order):
    out_path = tmp_path / "nyq.csv"
    code, env = run_json(
        capsys,
        ["nyquist", first_order, "--line", "0", "--points", "5", "--out", str(out_path)],
    )
    assert code == 0
    text = out_path.read_text()
    assert text.splitlines()[0] == "omega,re,im,mag,disk_radius"
    assert env["results"]["rows"] == 5
    assert env["results"]["critical_point_excluded"] is True


def test_bode_csv_schema(capsys, first_order):
    code, out = run(capsys, ["bode", first_order, "--line", "0", "--points", "4"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "omega,mag_db,phase_deg"
    row = [float(x) for x in lines[1].split(",")]
    assert row[1] == pytest.approx(0.0, abs=1e-9)  # |G(0)| = 1 -> 0 dB


def test_laplace_forward_verb(capsys):
    sig = json.dumps(
        {
            "terms": [
                {"c": 1, "k": 0, "a": -1, "side": "causal"},
                {"c": 1, "k": 0, "a": 1, "side": "anticausal"},
            ]
        }
    )
    code, env = run_json(capsys, ["laplace", "forward", sig])
    assert code == 0
    assert env["results"]["num"] == [-2]
    assert env["results"]["den"] == [-1, 0, 1]
    assert env["results"]["roc"] == [-1, 1]


def test_laplace_invert_verb(capsys, tmp_path):
    model = write_model(
        tmp_path / "m.json", {"kind": "tf", "num": [1.0], "den": [-3.0, 2.0, 1.0]}
    )
    code, env = run_json(capsys, ["laplace", "invert", model, "--roc=-3,1"])
    assert code == 0
    sides = {t["side"] for t in env["results"]["terms"]}
    assert sides == {"causal", "anticausal"}
    assert len(env["results"]["roc_options"]) == 3


def test_missing_model_exits_3(capsys, tmp_path):
    code, _ = run(capsys, ["norm", str(tmp_path / "nope.json"), "--line", "0"])
    assert code == 3


def test_malformed_model_exits_3(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "tf", "num": [1.0]}')
    code, _ = run(capsys, ["norm", str(bad), "--line", "0"])
    assert code == 3


def test_bad_strip_exits_3(capsys, first_order):
    code, _ = run(capsys, ["norm", first_order, "--strip", "2,1"])
    assert code == 3


def test_missing_region_exits_3(capsys, first_order):
    with pytest.raises(SystemExit) as info:
        main(["norm", first_order])
    assert info.value.code == 3
    capsys.readouterr()


def test_pole_on_line_exits_2(capsys, first_order):
    code, out = run(capsys, ["norm", first_order, "--line", "1"])
    assert code == 2
    env = json.loads(out)
    assert env["error"]["type"] == "PoleOnLine"


def test_example_sec5_confirms(capsys, tmp_path):
    out_path = tmp_path / "fig.csv"
    code, out = run(
        capsys, ["example-sec5", "--slopes", "3", "--out", str(out_path)]
    )
    assert code == 0
    assert out.strip().endswith("robust 2-dominance: CONFIRMED")
    env = json.loads(out[: out.rindex("robust")])
    eigs = sorted(z[0] for z in env["results"]["closed_loop"]["eigenvalues"])
    assert eigs[-1] == pytest.approx(0.4207469788, abs=1e-6)
    assert env["results"]["small_gain"]["satisfied"] is True
    assert out_path.read_text().splitlines()[0] == "omega,re,im,mag,disk_radius"
    assert env["notes"]  # benchmark annotation present


def test_example_sec5_large_lag_not_confirmed(capsys):
    code, out = run(capsys, ["example-sec5", "--tau", "10", "--slopes", "3"])
    assert code == 2
    assert out.strip().endswith("robust 2-dominance: NOT CONFIRMED")
