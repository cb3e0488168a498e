"""Acceptance criteria, one test each, at their stated tolerances.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from qucouple.cli import main
from qucouple.effective_model import (
    EffectiveTwoQubit,
    ThreeModeSpins,
    analytic_eigensystem,
    effective_hamiltonian,
)
from qucouple.entanglement import (
    PureState4,
    concurrence_pure,
    concurrence_thermal,
    concurrence_wootters,
    critical_temperature,
)
from qucouple.exact_bench import swt_error
from qucouple.linalg import jacobi_eigh
from qucouple.sweep import Axis, SweepSpec, run_sweep
from qucouple.thermal import gibbs_state, partition_function

LN_1P_SQRT2 = math.log(1.0 + math.sqrt(2.0))
SEED = 20261019


def nonzero(rng, lo, hi):
    while True:
        v = rng.uniform(lo, hi)
        if v != 0:
            return v


@pytest.mark.criterion(1, "closed-form thermal concurrence equals Wootters on the Gibbs state")
def test_oracle_equivalence():
    rng = np.random.default_rng(SEED)
    draws = [(rng.uniform(-5, 5), rng.uniform(-5, 5), nonzero(rng, -5, 5), rng.uniform(0.05, 5))
             for _ in range(1000)]
    start = time.perf_counter()
    worst = 0.0
    for w1, w2, g, t in draws:
        e = EffectiveTwoQubit(w1, w2, g)
        c_closed = concurrence_thermal(e, t)
        c_numeric = concurrence_wootters(gibbs_state(effective_hamiltonian(e), t)).value
        worst = max(worst, abs(c_closed - c_numeric))
    elapsed = time.perf_counter() - start
    assert worst <= 1e-10
    assert elapsed < 5.0


@pytest.mark.criterion(2, "resonant strong coupling: maximal at low T, vanishing above T_c")
def test_strong_coupling_temperature_profile():
    e = EffectiveTwoQubit(1.0, 1.0, 5.0)
    tc = critical_temperature(e)
    assert tc == pytest.approx(5.0 / LN_1P_SQRT2, rel=1e-10)
    assert round(tc, 3) == 5.673
    assert concurrence_thermal(e, 0.01) >= 0.999
    ts = np.linspace(0.5, 10.0, 951)
    cs = np.array([concurrence_thermal(e, t) for t in ts])
    below = ts < tc
    assert np.all(np.diff(cs[below]) < 0)
    assert np.all(cs[below] > 0)
    assert np.all(cs[~below] == 0.0)
    assert concurrence_thermal(e, 6.0) == 0.0


@pytest.mark.criterion(3, "detuned qubits entangle more weakly than resonant ones")
def test_detuning_weakens_entanglement():
    def grid_max(w1, w2):
        spec = SweepSpec(Axis("g", 0.0, 10.0, 201), Axis("T", 0.1, 5.0, 201), fixed={"w1": w1, "w2": w2})
        return run_sweep(spec).concurrence.max()

    assert grid_max(5.0, 1.0) < grid_max(1.0, 1.0)


@pytest.mark.criterion(4, "concurrence is even in the coupling, bit for bit")
def test_evenness_in_coupling():
    gs = Axis("g", -10.0, 10.0, 201).values()
    assert np.array_equal(gs, -gs[::-1])
    for w1, w2, t in [(1.0, 1.0, 0.5), (5.0, 1.0, 1.0), (-2.0, 3.0, 0.2), (0.0, 0.0, 2.0)]:
        for g in gs:
            assert concurrence_thermal(EffectiveTwoQubit(w1, w2, g), t) == \
                concurrence_thermal(EffectiveTwoQubit(w1, w2, -g), t)


@pytest.mark.criterion(5, "analytic spectrum and eigenvectors match the Jacobi solver")
def test_spectrum():
    rng = np.random.default_rng(SEED + 5)
    for _ in range(500):
        e = EffectiveTwoQubit(*rng.uniform(-5, 5, 3))
        h = effective_hamiltonian(e)
        es = analytic_eigensystem(e)
        w, _ = jacobi_eigh(h)
        expected = np.sort([e.alpha / 2, -e.alpha / 2, e.gamma / 2, -e.gamma / 2])
        assert np.max(np.abs(np.sort(es.energies) - expected)) == 0.0
        assert np.max(np.abs(w - expected)) <= 1e-10
        residual = np.abs(h @ es.states - es.states * es.energies)
        assert np.max(residual) <= 1e-11


@pytest.mark.criterion(6, "Gibbs states are valid and match the closed-form partition function")
def test_thermal_state_suite():
    rng = np.random.default_rng(SEED + 6)
    for _ in range(300):
        e = EffectiveTwoQubit(*rng.uniform(-5, 5, 3))
        t = rng.uniform(0.05, 5)
        h = effective_hamiltonian(e)
        rho = gibbs_state(h, t)
        m = rho.matrix
        assert abs(np.trace(m) - 1.0) <= 1e-10
        assert jacobi_eigh(m)[0][0] >= -1e-10
        assert np.max(np.abs(m @ h - h @ m)) <= 1e-10
        assert rho.z == pytest.approx(partition_function(e, t), rel=1e-10)


@pytest.mark.criterion(7, "critical temperature at resonance is g / ln(1 + sqrt 2)")
@pytest.mark.parametrize("g", [0.5, 1.0, 2.0, 5.0])
def test_critical_temperature(g):
    e = EffectiveTwoQubit(2.0, 2.0, g)
    assert e.omega == 0
    tc = critical_temperature(e)
    assert tc == pytest.approx(g / LN_1P_SQRT2, rel=1e-8)
    assert concurrence_thermal(e, 0.99 * tc) > 0
    assert concurrence_thermal(e, 1.01 * tc) == 0


@pytest.mark.criterion(8, "reduction error shrinks with the qubit-coupler coupling")
def test_swt_validation():
    gs = [0.4, 0.2, 0.1, 0.05]
    errors = [swt_error(ThreeModeSpins(4.0, 4.0, 6.0, g, g, 0.0), 0.5, "trace") for g in gs]
    print("swt errors:", dict(zip(gs, errors)))
    assert all(a > b for a, b in zip(errors, errors[1:]))
    assert errors[-1] < errors[0] / 4


@pytest.mark.criterion(9, "pure-state concurrence equals Wootters on the projector")
def test_pure_state_concurrence():
    rng = np.random.default_rng(SEED + 9)
    for _ in range(500):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        s = PureState4.from_vector(psi / np.linalg.norm(psi))
        assert abs(concurrence_pure(s) - concurrence_wootters(s.projector()).value) <= 1e-10
    r = 1 / math.sqrt(2)
    for bell in ([r, 0, 0, r], [r, 0, 0, -r], [0, r, r, 0], [0, r, -r, 0]):
        s = PureState4.from_vector(bell)
        assert concurrence_pure(s) == 1.0
        assert concurrence_wootters(s.projector()).value == 1.0
    for product in ([1, 0, 0, 0], [0, 0, 0, 1], [0.5, 0.5, 0.5, 0.5], [0.6, 0, 0.8, 0]):
        s = PureState4.from_vector(product)
        assert concurrence_pure(s) == 0.0
        assert concurrence_wootters(s.projector()).value == 0.0


@pytest.mark.criterion(10, "sweep output is byte-identical across runs and echoes its parameters")
def test_determinism(capsys):
    outputs = []
    for _ in range(2):
        assert main(["sweep", "--preset", "case2-b"]) == 0
        outputs.append(capsys.readouterr().out)
    proc = subprocess.run([sys.executable, "-m", "qucouple", "sweep", "--preset", "case2-b"],
                          capture_output=True, text=True, check=True)
    outputs.append(proc.stdout)
    assert outputs[0] == outputs[1] == outputs[2]
    header = [l for l in outputs[0].splitlines() if l.startswith("#")]
    assert "# fixed: T=0.2, g=0.2" in header
    assert len(outputs[0].splitlines()) == len(header) + 1 + 201 * 201
