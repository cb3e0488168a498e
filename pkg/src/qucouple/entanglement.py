"""Two-qubit concurrence: pure states, general density matrices, thermal X-states."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .effective_model import EffectiveTwoQubit
from .linalg import psd_sqrt, singular_values

EPS = np.finfo(float).eps
NORM_TOL = 1e-9
CLAMP_TOL = 1e-12

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
# sigma_y (x) sigma_y in the computational basis |00>, |01>, |10>, |11>
YY = np.kron(SIGMA_Y, SIGMA_Y).real


@dataclass(frozen=True)
class PureState4:
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        norm = abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2 + abs(self.d) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm!r})")

    @classmethod
    def from_vector(cls, psi) -> "PureState4":
        a, b, c, d = (complex(x) for x in psi)
        return cls(a, b, c, d)

    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=complex)

    def projector(self) -> np.ndarray:
        psi = self.vector()
        return np.outer(psi, psi.conj())


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    lambdas: np.ndarray  # descending


def _floor(value: float, scale: float) -> float:
    # differences below rounding level of the inputs are not resolvable
    return 0.0 if value <= 8.0 * EPS * scale else value


def _unit(value: float) -> float:
    # concurrence is bounded by 1; within rounding of the bound it is the bound
    return 1.0 if value >= 1.0 - 8.0 * EPS else value


def concurrence_pure(s: PureState4) -> float:
    ad, bc = s.a * s.d, s.b * s.c
    return _unit(_floor(2.0 * abs(ad - bc), abs(ad) + abs(bc)))


def concurrence_wootters(rho, *, validate: bool = True) -> ConcurrenceResult:
    """Wootters concurrence of a 4x4 density matrix.

    The lambdas (square roots of the eigenvalues of rho * rho_tilde) are
    obtained as singular values of conj(S) (Y (x) Y) S with S = sqrt(rho),
    which avoids amplifying rounding noise through a square root of tiny
    eigenvalues. The spin flip uses the fixed computational basis.
    """
    m = np.asarray(getattr(rho, "matrix", rho), dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {m.shape}")
    if validate:
        if np.max(np.abs(m - m.conj().T)) > CLAMP_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-10:
            raise ValueError(f"density matrix trace is {np.trace(m).real!r}, expected 1")
    root = psd_sqrt(m, clamp=CLAMP_TOL)
    lambdas = singular_values(root.conj() @ YY @ root)
    raw = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]
    # lambdas are bounded by tr(rho) = 1, so rounding noise is absolute
    value = _floor(raw, 1.0) if raw > 0 else 0.0
    return ConcurrenceResult(_unit(value), lambdas)


def _scaled_terms(e: EffectiveTwoQubit, temperature: float) -> tuple[float, float]:
    """(k sinh s - 1, cosh a + cosh s), both multiplied by exp(-max(a, s))."""
    s = e.gamma / (2.0 * temperature)
    a = abs(e.alpha) / (2.0 * temperature)
    k = 2.0 * abs(e.g) / e.gamma
    top = max(a, s)
    num = 0.5 * k * (math.exp(s - top) - math.exp(-s - top)) - math.exp(-top)
    den = 0.5 * (math.exp(a - top) + math.exp(-a - top) + math.exp(s - top) + math.exp(-s - top))
    return num, den


def concurrence_thermal(e: EffectiveTwoQubit, temperature: float) -> float:
    """Closed-form concurrence of the effective model's Gibbs state.

    The state is X-shaped with r11 * r44 = 1, so
    C = 2 max(0, |r23| - 1) / Z with |r23| = (2|g|/gamma) sinh(gamma/2T).
    Evaluated with exponentials rescaled by the largest exponent so that
    small T does not overflow.
    """
    if not temperature > 0:
        raise ValueError(f"temperature must be positive, got {temperature!r}")
    if e.g == 0:
        return 0.0
    num, den = _scaled_terms(e, temperature)
    if not num > 0:
        return 0.0
    return min(1.0, num / den)


def _log_sinh(x: float) -> float:
    if x > 20.0:
        return x - math.log(2.0) + math.log1p(-math.exp(-2.0 * x))
    return math.log(math.sinh(x))


def critical_temperature(e: EffectiveTwoQubit, rtol: float = 1e-12) -> Optional[float]:
    """Temperature above which the thermal concurrence vanishes.

    Bisection in log T on log(2|g|/gamma) + log sinh(gamma/2T) = 0. The left
    side is strictly decreasing in T, diverging as T -> 0 and tending to
    -inf as T -> inf, so a root exists for every g != 0.
    """
    if e.g == 0:
        raise ValueError("critical temperature undefined for zero coupling")
    log_k = math.log(2.0 * abs(e.g) / e.gamma)
    half_gamma = e.gamma / 2.0

    def f(log_t: float) -> float:
        return log_k + _log_sinh(half_gamma / math.exp(log_t))

    lo = hi = math.log(half_gamma)
    for _ in range(2000):
        if f(lo) > 0:
            break
        lo -= 1.0
    else:
        return None
    for _ in range(2000):
        if f(hi) < 0:
            break
        hi += 1.0
    else:
        return None
    while hi - lo > rtol:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return math.exp(0.5 * (lo + hi))
