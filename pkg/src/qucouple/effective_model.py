"""Schrieffer-Wolff reduction of the qubit-coupler-qubit chain.

Basis convention for all two-qubit objects: |00>, |01>, |10>, |11> with
sigma_z = diag(+1, -1) on each qubit, so |00> carries energy +alpha/2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .circuit import CircuitParams
from .linalg import numeric_eigensystem  # noqa: F401  (re-exported)

DISPERSIVE_RATIO = 0.1


class DispersiveWarning(UserWarning):
    """Coupling is not small against detuning; the reduction may be inaccurate."""


@dataclass(frozen=True)
class ThreeModeSpins:
    omega_1: float
    omega_2: float
    omega_c: float
    g_1: float = 0.0
    g_2: float = 0.0
    g_12: float = 0.0

    @property
    def delta_1(self) -> float:
        return self.omega_1 - self.omega_c

    @property
    def delta_2(self) -> float:
        return self.omega_2 - self.omega_c

    def swapped(self) -> "ThreeModeSpins":
        """Relabel qubit 1 <-> qubit 2."""
        return ThreeModeSpins(self.omega_2, self.omega_1, self.omega_c, self.g_2, self.g_1, self.g_12)

    @classmethod
    def from_circuit(cls, params: CircuitParams) -> "ThreeModeSpins":
        f = params.frequencies()
        g = params.couplings()
        return cls(f["1"][0], f["2"][0], f["c"][0], g.g_1, g.g_2, g.g_12)


@dataclass(frozen=True)
class EffectiveTwoQubit:
    """Two qubits with Lamb-shifted frequencies and an exchange coupling."""

    omega_1: float
    omega_2: float
    g: float

    @property
    def alpha(self) -> float:
        return self.omega_1 + self.omega_2

    @property
    def omega(self) -> float:
        """Frequency difference omega_1 - omega_2."""
        return self.omega_1 - self.omega_2

    @property
    def gamma(self) -> float:
        return math.hypot(2.0 * self.g, self.omega)

    @property
    def xi(self) -> float:
        return -self.omega + self.gamma

    @property
    def zeta(self) -> float:
        return -(self.omega + self.gamma)


@dataclass(frozen=True)
class EigenSystem4:
    energies: np.ndarray
    states: np.ndarray  # columns are the eigenvectors
    degenerate: bool = False


def swt_reduce(s: ThreeModeSpins, warn: bool = True) -> EffectiveTwoQubit:
    """Eliminate the coupler to second order in g_j / Delta_j.

    Raises ``ValueError`` on a resonant coupler (zero detuning) and emits a
    ``DispersiveWarning`` when |g_j / Delta_j| exceeds 0.1.
    """
    d1, d2 = s.delta_1, s.delta_2
    if d1 == 0 or d2 == 0:
        raise ValueError("coupler is resonant with a qubit (zero detuning); reduction invalid")
    if warn:
        for j, (g, d) in enumerate(((s.g_1, d1), (s.g_2, d2)), start=1):
            if abs(g / d) > DISPERSIVE_RATIO:
                warnings.warn(f"|g_{j}/Delta_{j}| = {abs(g / d):.3g} exceeds {DISPERSIVE_RATIO}",
                              DispersiveWarning, stacklevel=2)
    inv_delta = 1.0 / d1 + 1.0 / d2
    return EffectiveTwoQubit(
        omega_1=s.omega_1 + s.g_1 ** 2 / d1,
        omega_2=s.omega_2 + s.g_2 ** 2 / d2,
        g=s.g_1 * s.g_2 * inv_delta + s.g_12,
    )


def effective_hamiltonian(e: EffectiveTwoQubit) -> np.ndarray:
    a, w = e.alpha / 2.0, e.omega / 2.0
    h = np.diag([a, w, -w, -a]).astype(complex)
    h[1, 2] = h[2, 1] = e.g
    return h


def analytic_eigensystem(e: EffectiveTwoQubit) -> EigenSystem4:
    """Closed-form eigenpairs (|00>, |11>, xi-state, zeta-state).

    The exchange-block states are (x |10> + |01>) normalized, with
    x = xi / 2g or x = zeta / 2g. Against the matrix of
    ``effective_hamiltonian`` the energies are (+alpha/2, -alpha/2,
    +gamma/2, -gamma/2) in that order. With g = 0 the block is already
    diagonal and the bare |01>, |10> are returned; if also omega = 0 the
    pair is degenerate and flagged.
    """
    a, gam = e.alpha / 2.0, e.gamma
    energies = np.array([a, -a, gam / 2.0, -gam / 2.0])
    states = np.zeros((4, 4), dtype=complex)
    states[0, 0] = 1.0
    states[3, 1] = 1.0
    if e.g == 0:
        # |01> carries +omega/2, |10> carries -omega/2
        upper, lower = (1, 2) if e.omega >= 0 else (2, 1)
        states[upper, 2] = 1.0
        states[lower, 3] = 1.0
        return EigenSystem4(energies, states, degenerate=gam == 0)
    w, g = e.omega, e.g
    # (|01>, |10>) amplitudes proportional to (1, xi/2g) and (1, zeta/2g),
    # kept as unscaled pairs so neither cancellation nor tiny g overflows;
    # (gam + w)(gam - w) = 4g^2 makes both forms of each pair equivalent
    sg = math.copysign(1.0, g)
    two_g = 2.0 * abs(g)
    if w >= 0:
        pairs = ((gam + w, sg * two_g), (two_g, -sg * (gam + w)))
    else:
        pairs = ((two_g, sg * (gam - w)), (gam - w, -sg * two_g))
    for col, (u, x) in zip((2, 3), pairs):
        m = max(abs(u), abs(x))  # rescale first; subnormal pairs lose digits in hypot
        u, x = u / m, x / m
        n = math.hypot(u, x)
        states[:, col] = [0.0, u / n, x / n, 0.0]
    return EigenSystem4(energies, states)


def eigenvalues_sorted(e: EffectiveTwoQubit) -> np.ndarray:
    return np.sort(analytic_eigensystem(e).energies)


def from_circuit(params: CircuitParams, warn: bool = True) -> tuple[ThreeModeSpins, EffectiveTwoQubit]:
    spins = ThreeModeSpins.from_circuit(params)
    return spins, swt_reduce(spins, warn=warn)
