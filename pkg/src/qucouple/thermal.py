"""Gibbs states and the closed-form thermal elements of the effective model.

Temperatures are in energy units (k_B = 1).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .effective_model import EffectiveTwoQubit
from .linalg import jacobi_eigh

# below this temperature the Gibbs state is replaced by the ground-state projector
ZERO_T = 1e-6
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Unit-trace PSD operator; ``log_z`` is log of the partition function when known."""

    matrix: np.ndarray
    log_z: Optional[float] = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def z(self) -> Optional[float]:
        if self.log_z is None:
            return None
        try:
            return math.exp(self.log_z)
        except OverflowError:
            return math.inf

    def validate(self, tol: float = 1e-12) -> "DensityMatrix":
        m = self.matrix
        if np.max(np.abs(m - m.conj().T)) > tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > tol:
            raise ValueError(f"density matrix trace is {np.trace(m).real!r}, expected 1")
        if jacobi_eigh(m, check=False)[0][0] < -tol:
            raise ValueError("density matrix is not positive semidefinite")
        return self

    def to_json(self) -> str:
        """Row-major ``[re, im]`` pairs plus dimension and log Z."""
        entries = [[[float(x.real), float(x.imag)] for x in row] for row in self.matrix]
        return json.dumps({"dim": self.dim, "log_z": self.log_z, "entries": entries})

    @classmethod
    def from_json(cls, text: str) -> "DensityMatrix":
        d = json.loads(text)
        m = np.array([[complex(re, im) for re, im in row] for row in d["entries"]])
        return cls(m, d.get("log_z"))


@dataclass(frozen=True)
class XStateElements:
    """Unnormalized thermal-state entries of the effective model.

    ``r23`` is signed as it comes out of the matrix exponential, i.e.
    -(2g/gamma) sinh(gamma/2T).
    """

    r11: float
    r22: float
    r33: float
    r44: float
    r23: float
    z: float


def _check_temperature(temperature: float) -> None:
    if not temperature > 0:
        raise ValueError(f"temperature must be positive, got {temperature!r}")


def gibbs_state(h: np.ndarray, temperature: float) -> DensityMatrix:
    """exp(-H/T) / Z through the spectral decomposition of ``h``.

    Energies are shifted by the ground energy before exponentiating, so
    low temperatures do not overflow. For T < 1e-6 the state is the
    equal mixture over the (possibly degenerate) ground space.
    """
    _check_temperature(temperature)
    w, v = jacobi_eigh(h)
    e0 = w[0]
    if temperature < ZERO_T:
        tol = DEGENERACY_TOL * max(1.0, float(np.max(np.abs(w))))
        weights = (w - e0 <= tol).astype(float)
    else:
        weights = np.exp(-(w - e0) / temperature)
    total = float(np.sum(weights))
    rho = (v * (weights / total)) @ v.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho, -e0 / temperature + math.log(total))


def partition_function(e: EffectiveTwoQubit, temperature: float) -> float:
    _check_temperature(temperature)
    return 2.0 * (math.cosh(e.alpha / (2.0 * temperature)) + math.cosh(e.gamma / (2.0 * temperature)))


def xstate_elements(e: EffectiveTwoQubit, temperature: float) -> XStateElements:
    """Entries of exp(-H/T) for the effective Hamiltonian.

    The exchange block gives r22 and r33 that differ by the sign of the
    omega sinh term; they coincide only for omega = 0.
    """
    _check_temperature(temperature)
    s = e.gamma / (2.0 * temperature)
    a = e.alpha / (2.0 * temperature)
    if e.gamma == 0:
        ratio_w, ratio_g = 0.0, 0.0
    else:
        ratio_w, ratio_g = e.omega / e.gamma, 2.0 * e.g / e.gamma
    ch, sh = math.cosh(s), math.sinh(s)
    return XStateElements(
        r11=math.exp(-a),
        r22=ch - ratio_w * sh,
        r33=ch + ratio_w * sh,
        r44=math.exp(a),
        r23=-ratio_g * sh,
        z=partition_function(e, temperature),
    )


def purity(rho: DensityMatrix) -> float:
    return float(np.real(np.trace(rho.matrix @ rho.matrix)))
