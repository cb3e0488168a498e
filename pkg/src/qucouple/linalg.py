"""Cyclic Jacobi eigensolver for small complex Hermitian matrices.

Every matrix in this package is at most 8x8, so a plain two-sided Jacobi
sweep is fast enough and needs nothing beyond numpy array arithmetic.
"""

from __future__ import annotations

import math

import numpy as np

HERMITIAN_TOL = 1e-12
OFFDIAG_RTOL = 1e-13
MAX_SWEEPS = 60


def _rotation(app: float, aqq: float, apq: complex) -> tuple[float, float, complex, float]:
    """Return (c, s, phase, t) zeroing ``apq`` of the Hermitian 2x2 block."""
    mag = abs(apq)
    phase = apq / mag
    tau = (aqq - app) / (2.0 * mag)
    if tau == 0.0:
        t = 1.0
    else:
        t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c, phase, t


def check_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
    if np.max(np.abs(h - h.conj().T), initial=0.0) > tol * scale:
        raise ValueError("matrix is not Hermitian")
    return h


def jacobi_eigh(h: np.ndarray, *, check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(w, v)`` with ``w`` ascending and the columns of ``v`` the
    orthonormal eigenvectors. Equal eigenvalues are ordered by the index of
    their eigenvector's dominant basis component, and each eigenvector is
    phased so that this dominant component is real and positive, which makes
    the output reproducible.
    """
    h = check_hermitian(h) if check else np.asarray(h, dtype=complex)
    n = h.shape[0]
    if n == 0:
        return np.zeros(0), np.eye(0, dtype=complex)
    # plain Python lists: at n <= 8 per-element numpy overhead dominates
    a = (0.5 * (h + h.conj().T)).tolist()
    v = np.eye(n, dtype=complex).tolist()
    norm = float(np.linalg.norm(h))
    target = (OFFDIAG_RTOL * norm) ** 2
    rng = range(n)

    for _ in range(MAX_SWEEPS):
        off = sum(abs(a[i][j]) ** 2 for i in rng for j in rng if i != j)
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if abs(apq) <= 1e-300:
                    continue
                c, s, phase, _ = _rotation(a[p][p].real, a[q][q].real, apq)
                se, sc = s * phase, s * phase.conjugate()
                for row in a:
                    xp, xq = row[p], row[q]
                    row[p] = c * xp - sc * xq
                    row[q] = se * xp + c * xq
                ap, aq = a[p], a[q]
                for k in rng:
                    xp, xq = ap[k], aq[k]
                    ap[k] = c * xp - se * xq
                    aq[k] = sc * xp + c * xq
                ap[q] = aq[p] = 0.0
                ap[p] = ap[p].real
                aq[q] = aq[q].real
                for row in v:
                    xp, xq = row[p], row[q]
                    row[p] = c * xp - sc * xq
                    row[q] = se * xp + c * xq
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    w = np.array([a[k][k].real for k in rng])
    vec = np.array(v, dtype=complex)
    dominant = np.argmax(np.abs(vec) ** 2 - 1e-12 * np.arange(n)[:, None], axis=0)
    for k in rng:
        ph = vec[dominant[k], k]
        vec[:, k] *= np.conj(ph) / abs(ph)
    order = _tie_break_order(w, dominant, 1e-10 * max(norm, 1.0))
    return w[order], vec[:, order]


def _tie_break_order(w: np.ndarray, dominant: np.ndarray, tol: float) -> list[int]:
    order = list(np.argsort(w, kind="stable"))
    out: list[int] = []
    cluster = [order[0]]
    for k in order[1:]:
        if w[k] - w[cluster[-1]] <= tol:
            cluster.append(k)
        else:
            out.extend(sorted(cluster, key=lambda j: dominant[j]))
            cluster = [k]
    out.extend(sorted(cluster, key=lambda j: dominant[j]))
    return out


def numeric_eigensystem(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Full spectrum and eigenvectors of a Hermitian matrix (Jacobi)."""
    return jacobi_eigh(h)


def psd_sqrt(rho: np.ndarray, clamp: float = 1e-12) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-clamp, 0)`` are treated as zero; anything more
    negative means the input is not PSD.
    """
    w, v = jacobi_eigh(rho)
    if w.size and w[0] < -clamp:
        raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    w = np.sqrt(np.clip(w, 0.0, None))
    return (v * w) @ v.conj().T


def singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values of a small complex matrix, descending.

    One-sided (Hestenes) Jacobi: columns are rotated pairwise until mutually
    orthogonal and the singular values are then their norms. Unlike taking
    square roots of the eigenvalues of ``m^H m`` this keeps tiny singular
    values at rounding-level size instead of inflating them to ``sqrt(eps)``.
    """
    cols = np.array(m, dtype=complex).T.tolist()
    n = len(cols)
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                up, uq = cols[p], cols[q]
                alpha = sum(abs(x) ** 2 for x in up)
                beta = sum(abs(x) ** 2 for x in uq)
                gamma = sum(x.conjugate() * y for x, y in zip(up, uq))
                if abs(gamma) <= 1e-14 * math.sqrt(alpha * beta) or abs(gamma) <= 1e-300:
                    continue
                rotated = True
                c, s, phase, _ = _rotation(alpha, beta, gamma)
                se, sc = s * phase, s * phase.conjugate()
                cols[p] = [c * x - sc * y for x, y in zip(up, uq)]
                cols[q] = [se * x + c * y for x, y in zip(up, uq)]
        if not rotated:
            break
    else:
        raise RuntimeError("one-sided Jacobi did not converge")
    norms = [math.sqrt(sum(abs(x) ** 2 for x in col)) for col in cols]
    return np.array(sorted(norms, reverse=True))
