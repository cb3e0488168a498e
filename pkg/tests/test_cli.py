import json

import pytest

from qucouple.cli import main, to_physical_temperature
from qucouple.effective_model import EffectiveTwoQubit
from qucouple.entanglement import concurrence_thermal
from qucouple.sweep import fmt
from qucouple.thermal import DensityMatrix

CIRCUIT = {
    "c_1": 70.0, "c_2": 72.0, "c_c": 200.0, "c_1c": 4.0, "c_2c": 4.2, "c_12": 0.1,
    "e_c_1": 0.2, "e_c_c": 0.1, "e_c_2": 0.21,
    "e_j_left_1": 10.0, "e_j_right_1": 10.0, "flux_bias_1": 0.0,
    "e_j_left_c": 40.0, "e_j_right_c": 40.0, "flux_bias_c": 0.0,
    "e_j_left_2": 9.5, "e_j_right_2": 9.5, "flux_bias_2": 0.0,
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_concurrence_matches_library(capsys):
    code, out, _ = run(capsys, "concurrence", "--w1", "1", "--w2", "1", "--g", "5", "--temp", "1")
    assert code == 0
    assert out == fmt(concurrence_thermal(EffectiveTwoQubit(1, 1, 5), 1.0)) + "\n"
    assert out.startswith("0.96634037463")


def test_concurrence_zero_coupling(capsys):
    assert run(capsys, "concurrence", "--w1", "1", "--w2", "1", "--g", "0", "--temp", "0.5")[1] == "0\n"


def test_dump_state(capsys, tmp_path):
    path = tmp_path / "rho.json"
    run(capsys, "concurrence", "--w1", "1", "--w2", "2", "--g", "0.5", "--temp", "0.5", "--dump-state", str(path))
    DensityMatrix.from_json(path.read_text()).validate()


def test_sweep_preset_echoes_metadata(capsys):
    code, out, _ = run(capsys, "sweep", "--preset", "case2-b", "--points", "11")
    assert code == 0
    assert "# fixed: T=0.2, g=0.2" in out
    assert len([l for l in out.splitlines() if not l.startswith("#")]) == 1 + 121


def test_sweep_fixed_override_and_output(capsys, tmp_path):
    path = tmp_path / "grid.csv"
    code, out, _ = run(capsys, "sweep", "--preset", "case2-b", "--points", "5", "--fixed", "g=0.4",
                       "--format", "matrix", "--output", str(path))
    assert code == 0 and out == ""
    assert "# fixed: T=0.2, g=0.4" in path.read_text()


def test_sweep_config(capsys, tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"x": {"param": "T", "min": 0.1, "max": 1, "points": 4},
                                "fixed": {"w1": 1, "w2": 1, "g": 1}}))
    code, out, _ = run(capsys, "sweep", "--config", str(path), "--format", "json")
    assert code == 0 and len(json.loads(out)["concurrence"][0]) == 4


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["concurrence", "--bogus", "1"])
    assert exc.value.code == 2
    code, out, err = run(capsys, "sweep")
    assert code == 2 and out == "" and "exactly one" in err
    code, out, _ = run(capsys, "sweep", "--preset", "nope")
    assert code == 2 and out == ""


def test_domain_errors(capsys):
    code, out, err = run(capsys, "concurrence", "--w1", "1", "--w2", "1", "--g", "1", "--temp", "0")
    assert code == 1 and out == "" and "temperature" in err
    code, out, _ = run(capsys, "sweep", "--preset", "case2-b", "--fixed", "T=-1")
    assert code == 1 and out == ""
    code, out, _ = run(capsys, "couple", "--config", "/nonexistent.json")
    assert code == 1 and out == ""


def test_physical_temperature():
    t = to_physical_temperature(1.0, 4.0)
    assert t == pytest.approx(191.96972293464884, rel=1e-12)
    assert to_physical_temperature(2.0, 4.0) == pytest.approx(t / 2)
    assert to_physical_temperature(1.0, 8.0) == pytest.approx(2 * t)
    for bad in ((0.0, 4.0), (1.0, -4.0)):
        with pytest.raises(ValueError):
            to_physical_temperature(*bad)


def test_si_temp_and_critical(capsys):
    code, out, err = run(capsys, "si-temp", "--temp", "1")
    assert out == "191.969722935\n" and "dimensionally" in err
    code, out, _ = run(capsys, "critical-temp", "--w1", "1", "--w2", "1", "--g", "5", "--ref-ghz", "4")
    lines = dict(l.split("=") for l in out.splitlines())
    assert float(lines["T_c"]) == pytest.approx(5.672963285533, rel=1e-11)
    assert "T_c_mK" in lines


def test_transmon(capsys):
    code, out, _ = run(capsys, "transmon", "--ec", "0.2", "--ej", "10")
    vals = dict(l.split("=") for l in out.splitlines())
    assert float(vals["omega"]) == pytest.approx((8 * 10 * 0.2) ** 0.5 - 0.2)
    assert float(vals["anharmonicity"]) == -0.2
    code, out, _ = run(capsys, "transmon", "--ec", "0.2", "--ej-left", "5", "--ej-right", "5", "--flux", "0.5")
    assert code == 0 and float(dict(l.split("=") for l in out.splitlines())["e_j"]) == pytest.approx(0, abs=1e-12)
    assert run(capsys, "transmon", "--ec", "0.2")[0] == 2


def test_couple_and_effective(capsys, tmp_path):
    path = tmp_path / "circuit.json"
    path.write_text(json.dumps(CIRCUIT))
    code, out, _ = run(capsys, "couple", "--config", str(path))
    assert code == 0
    assert {l.split("=")[0] for l in out.splitlines()} == {"omega_1", "omega_c", "omega_2", "g_1", "g_2", "g_12", "eta"}
    code, out, _ = run(capsys, "effective", "--config", str(path))
    assert code == 0 and "g_eff=" in out


def test_effective_flags(capsys):
    code, out, err = run(capsys, "effective", "--w1", "4", "--w2", "4", "--wc", "6",
                         "--g1", "0.2", "--g2", "0.2", "--g12", "0.01")
    vals = dict(l.split("=") for l in out.splitlines())
    assert float(vals["g_eff"]) == pytest.approx(-0.03)
    assert float(vals["omega_1_eff"]) == pytest.approx(3.98)
    assert run(capsys, "effective", "--w1", "4")[0] == 2


def test_validate_swt_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "validate-swt", "--g", "0.2,0.1", "--mode", "trace")
    rows = [l for l in out.splitlines() if not l.startswith("#")]
    assert rows[0] == "g,T,mode,C_exact,C_eff,error"
    assert len(rows) == 3
    path = tmp_path / "v.csv"
    assert run(capsys, "validate-swt", "--output", str(path))[0] == 0
    assert len(path.read_text().splitlines()) == 4 + 8


def test_presets_listing(capsys):
    out = run(capsys, "presets")[1]
    assert out.count("\n") == 7 and out.startswith("case1-equal: {")
