"""Circuit parameters to mode frequencies and coupling constants.

Three modes are modelled: qubit 1, the tunable coupler ``c`` and qubit 2.
Energies are dimensionless (hbar = 1); capacitances may use any consistent
unit since only their ratios enter the couplings. External flux is given in
units of the flux quantum.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

# a ratio above this counts as violating a "much less than" relation
HIERARCHY_RATIO = 0.2


@dataclass(frozen=True)
class JunctionPair:
    """Two-junction loop (SQUID) whose total Josephson energy is flux-tunable."""

    e_j_left: float
    e_j_right: float
    flux_bias: float = 0.0

    def __post_init__(self):
        if self.e_j_left < 0 or self.e_j_right < 0:
            raise ValueError("junction energies must be nonnegative")
        if self.e_j_left + self.e_j_right <= 0:
            raise ValueError("total junction energy must be positive (asymmetry undefined)")

    @property
    def e_j_total(self) -> float:
        return self.e_j_left + self.e_j_right

    @property
    def asymmetry(self) -> float:
        return (self.e_j_left - self.e_j_right) / self.e_j_total


@dataclass(frozen=True)
class TransmonMode:
    e_c: float
    e_j: float

    def __post_init__(self):
        if not self.e_c > 0:
            raise ValueError("charging energy must be positive")
        if self.e_j < 0:
            raise ValueError("Josephson energy must be nonnegative")


@dataclass(frozen=True)
class CircuitTopology:
    c_1: float
    c_2: float
    c_c: float
    c_1c: float = 0.0
    c_2c: float = 0.0
    c_12: float = 0.0

    def __post_init__(self):
        for name in ("c_1", "c_2", "c_c"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("c_1c", "c_2c", "c_12"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class CouplingSet:
    g_1: float
    g_2: float
    g_12: float
    eta: Optional[float]  # None when there is no direct capacitance


def tunable_josephson_energy(j: JunctionPair) -> float:
    """Effective Josephson energy of an asymmetric SQUID at its flux bias."""
    x = math.pi * j.flux_bias
    d = j.asymmetry
    return j.e_j_total * math.sqrt(math.cos(x) ** 2 + d * d * math.sin(x) ** 2)


def transmon_frequency(m: TransmonMode) -> tuple[float, float]:
    """Return ``(omega, anharmonicity)`` of the quartic (Duffing) transmon.

    ``omega`` goes negative for ``e_j / e_c < 1/8``; this is kept rather than
    rejected because frequency sweeps deliberately enter that regime.
    """
    return math.sqrt(8.0 * m.e_j * m.e_c) - m.e_c, -m.e_c


def capacitance_matrix(t: CircuitTopology) -> np.ndarray:
    """3x3 Maxwell capacitance matrix in mode order (1, c, 2)."""
    return np.array(
        [
            [t.c_1 + t.c_12 + t.c_1c, -t.c_1c, -t.c_12],
            [-t.c_1c, t.c_c + t.c_2c + t.c_1c, -t.c_2c],
            [-t.c_12, -t.c_2c, t.c_2 + t.c_12 + t.c_2c],
        ]
    )


def inverse_capacitance_matrix(t: CircuitTopology) -> np.ndarray:
    cmat = capacitance_matrix(t)
    if np.min(np.linalg.eigvalsh(cmat)) <= 0:
        raise ValueError("capacitance matrix is not positive definite")
    return np.linalg.inv(cmat)


def _sqrt_product(x: float, y: float, what: str) -> float:
    prod = x * y
    if prod < 0:
        raise ValueError(f"negative radicand in {what}: frequencies must share a sign")
    return math.sqrt(prod)


def coupling_strengths(t: CircuitTopology, omega_1: float, omega_2: float, omega_c: float) -> CouplingSet:
    """Leading-order exchange couplings from the capacitive network.

    With no direct capacitance (``c_12 == 0``) the direct coupling is zero
    and ``eta`` is reported as ``None``.
    """
    g_1 = 0.5 * t.c_1c / math.sqrt(t.c_1 * t.c_c) * _sqrt_product(omega_1, omega_c, "g_1")
    g_2 = 0.5 * t.c_2c / math.sqrt(t.c_2 * t.c_c) * _sqrt_product(omega_2, omega_c, "g_2")
    if t.c_12 == 0:
        return CouplingSet(g_1, g_2, 0.0, None)
    eta = t.c_1c * t.c_2c / (t.c_12 * t.c_c)
    g_12 = 0.5 * (1.0 + eta) * t.c_12 / math.sqrt(t.c_1 * t.c_2) * _sqrt_product(omega_1, omega_2, "g_12")
    return CouplingSet(g_1, g_2, g_12, eta)


def check_hierarchy(t: CircuitTopology, threshold: float = HIERARCHY_RATIO) -> list[str]:
    """Warnings for each violated relation in c_12 << c_jc << c_j, c_c."""
    warnings = []
    for j in ("1", "2"):
        c_jc = getattr(t, f"c_{j}c")
        if c_jc > 0:
            if t.c_12 / c_jc > threshold:
                warnings.append(f"c_12 << c_{j}c violated (ratio {t.c_12 / c_jc:.3g} > {threshold})")
        elif t.c_12 > 0:
            warnings.append(f"c_12 << c_{j}c violated (c_{j}c is zero)")
        for mode in (j, "c"):
            c_self = getattr(t, f"c_{mode}")
            ratio = c_jc / c_self
            if ratio > threshold:
                warnings.append(f"c_{j}c << c_{mode} violated (ratio {ratio:.3g} > {threshold})")
    return warnings


@dataclass(frozen=True)
class CircuitParams:
    """Complete circuit description: topology plus one SQUID and E_C per mode."""

    topology: CircuitTopology
    junctions: dict  # mode name ("1", "2", "c") -> JunctionPair
    charging: dict  # mode name -> E_C

    MODES = ("1", "c", "2")

    @classmethod
    def from_dict(cls, d: dict) -> "CircuitParams":
        """Build from a flat mapping (``c_1``, ``e_c_1``, ``e_j_left_1``, ``flux_bias_1``, ...)."""
        known = {"c_1", "c_2", "c_c", "c_1c", "c_2c", "c_12"}
        for m in cls.MODES:
            known |= {f"e_c_{m}", f"e_j_left_{m}", f"e_j_right_{m}", f"flux_bias_{m}"}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ValueError(f"unknown circuit keys: {', '.join(unknown)}")
        try:
            topo = CircuitTopology(**{k: float(d[k]) for k in ("c_1", "c_2", "c_c")},
                                   **{k: float(d.get(k, 0.0)) for k in ("c_1c", "c_2c", "c_12")})
            junctions = {
                m: JunctionPair(float(d[f"e_j_left_{m}"]), float(d[f"e_j_right_{m}"]),
                                float(d.get(f"flux_bias_{m}", 0.0)))
                for m in cls.MODES
            }
            charging = {m: float(d[f"e_c_{m}"]) for m in cls.MODES}
        except KeyError as exc:
            raise ValueError(f"missing circuit key: {exc.args[0]}") from None
        return cls(topo, junctions, charging)

    @classmethod
    def from_json(cls, path) -> "CircuitParams":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def mode(self, name: str) -> TransmonMode:
        return TransmonMode(self.charging[name], tunable_josephson_energy(self.junctions[name]))

    def frequencies(self) -> dict:
        """Mode name -> (omega, anharmonicity)."""
        return {m: transmon_frequency(self.mode(m)) for m in self.MODES}

    def couplings(self) -> CouplingSet:
        f = self.frequencies()
        return coupling_strengths(self.topology, f["1"][0], f["2"][0], f["c"][0])
