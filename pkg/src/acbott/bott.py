"""Signature-based index of an almost-commuting unitary pair.

The index is built from a fixed triple of periodic functions (f, g, h) with
f^2 + g^2 + h^2 = 1 and gh = 0: a 2x2-block hermitian matrix B(U, V) is
assembled from f[V], g[V], h[V] and anticommutators with U, and the index is
half its signature.  The triple's bump function h lives on [-pi/2, pi/2] and
the companion g on the complement; f is a degree-5 sine polynomial with
rational coefficients.
"""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .config import DEFAULT_TOL, KAPPA_THRESHOLD
from .errors import (
    AccuracyNotCertified,
    GapClosed,
    NumericalInconsistency,
    ThresholdExceeded,
)
from .linalg import (
    TrigPoly,
    UnitaryPair,
    apply_periodic,
    apply_trigpoly,
    hermitian_eig,
)

# sine amplitudes of f: (150 sin x + 25 sin 3x + 3 sin 5x) / 128
F_AMPLITUDES = (150.0 / 128.0, 0.0, 25.0 / 128.0, 0.0, 3.0 / 128.0)

_BUMP_PREFACTOR = np.sqrt(407.0 / 512.0)


def eval_f(x):
    """The odd degree-5 polynomial; maps [-pi/2, pi/2] onto [-1, 1]."""
    x = np.asarray(x, dtype=float)
    return (150 * np.sin(x) + 25 * np.sin(3 * x) + 3 * np.sin(5 * x)) / 128


def _bump_core(x):
    # closed form of sqrt(1 - f^2) up to the sign of cos^3
    return (
        _BUMP_PREFACTOR
        * np.abs(np.cos(x)) ** 3
        * np.sqrt(1 + (96 / 407) * np.cos(2 * x) + (9 / 407) * np.cos(4 * x))
    )


def _reduce_angle(x):
    x = np.asarray(x, dtype=float)
    return np.angle(np.exp(1j * x))


def eval_h(x):
    """Bump over [-pi/2, pi/2], zero outside."""
    r = _reduce_angle(x)
    return np.where(np.abs(r) <= np.pi / 2, _bump_core(r), 0.0)


def eval_g(x):
    """Bump over the complement of [-pi/2, pi/2], zero inside."""
    r = _reduce_angle(x)
    return np.where(np.abs(r) > np.pi / 2, _bump_core(r), 0.0)


def fourier_coefficients_h(max_n: int = 5, series_K: int = 7) -> np.ndarray:
    """Cosine coefficients c_0..c_max_n of the bump function h.

    Each c_n is computed as a truncated binomial series: the square root in
    the closed form is expanded in powers of u(x) = (96 cos 2x + 9 cos 4x)/407
    and every term is integrated by adaptive quadrature.  With series_K >= 7
    the truncation tail is certifiably below 1e-6 (checked and warned about
    otherwise).
    """
    from scipy.integrate import quad
    from scipy.special import binom

    if max_n > 16:
        raise ValueError("coefficient index capped at 16")
    if series_K < 7:
        warnings.warn(
            "series truncation below 7 terms is not certified to 1e-6",
            AccuracyNotCertified,
        )

    def u(x):
        return (96 * np.cos(2 * x) + 9 * np.cos(4 * x)) / 407.0

    out = np.zeros(max_n + 1)
    for n in range(max_n + 1):
        total = 0.0
        for k in range(series_K + 1):
            w = binom(0.5, k)
            val, _ = quad(
                lambda t, n=n, k=k: np.cos(t) ** 3 * u(t) ** k * np.cos(n * t),
                -np.pi / 2,
                np.pi / 2,
                epsabs=1e-9,
                limit=200,
            )
            total += w * val
        out[n] = _BUMP_PREFACTOR * total / (2 * np.pi)

    # worst-case series remainder sits at u = -105/407
    r = 105.0 / 407.0
    partial = sum(binom(0.5, k) * (-r) ** k for k in range(series_K + 1))
    tail = abs(np.sqrt(1 - r) - partial) * _BUMP_PREFACTOR * (4.0 / 3.0) / (2 * np.pi)
    if tail > 1e-6:
        warnings.warn(
            f"series tail bound {tail:.2e} exceeds 1e-6", AccuracyNotCertified
        )
    return out


@dataclass(frozen=True)
class StandardTriple:
    """Closed-form triple plus its degree-5 trigonometric approximants."""

    f: Callable
    g: Callable
    h: Callable
    f5: TrigPoly
    g5: TrigPoly
    h5: TrigPoly
    coefficients: np.ndarray  # c_0..c_5 of h


@functools.lru_cache(maxsize=1)
def standard_triple() -> StandardTriple:
    c = fourier_coefficients_h(5)
    f5 = TrigPoly.from_sin_series(F_AMPLITUDES)
    h5 = TrigPoly.from_cos_series(c[0], [2 * c[k] for k in range(1, 6)])
    # g is h shifted by pi, so its cosine coefficients alternate in sign
    b = [(-1.0) ** k * c[k] for k in range(6)]
    g5 = TrigPoly.from_cos_series(b[0], [2 * b[k] for k in range(1, 6)])
    return StandardTriple(eval_f, eval_g, eval_h, f5, g5, h5, c)


@dataclass(frozen=True)
class BottMatrix:
    B: np.ndarray
    delta: float
    gap: float
    method: str  # "trig" or "log"


def assemble_blocks(fV, gV, hV, U) -> np.ndarray:
    """Hermitian 2x2-block matrix from function values and the partner unitary.

    Corner orientation is fixed so that the full matrix has signature -2 on
    the shift/clock pair with V U V* U* = exp(-2 pi i / n) I, matching the
    winding invariant of that pair.  The commuting anchors (diagonal blocks
    +-fV, corners hV at U = I) are insensitive to this choice.
    """
    Ustar = U.conj().T
    top = gV + 0.5 * (hV @ Ustar + Ustar @ hV)
    bot = gV + 0.5 * (hV @ U + U @ hV)
    return np.block([[fV, top], [bot, -fV]])


def build_B(
    pair: UnitaryPair,
    triple: Optional[StandardTriple] = None,
    use_trigpoly: bool = False,
) -> BottMatrix:
    """Assemble B(U, V) and record its spectral gap at zero.

    With ``use_trigpoly`` the degree-5 approximants replace the exact
    closed-form functions.
    """
    t = triple or standard_triple()
    if use_trigpoly:
        fV = apply_trigpoly(t.f5, pair.V, tol=pair.unitary_tol)
        gV = apply_trigpoly(t.g5, pair.V, tol=pair.unitary_tol)
        hV = apply_trigpoly(t.h5, pair.V, tol=pair.unitary_tol)
    else:
        fV = apply_periodic(t.f, pair.V, tol=pair.unitary_tol)
        gV = apply_periodic(t.g, pair.V, tol=pair.unitary_tol)
        hV = apply_periodic(t.h, pair.V, tol=pair.unitary_tol)
    B = assemble_blocks(fV, gV, hV, pair.U)
    eigs = np.linalg.eigvalsh((B + B.conj().T) / 2)
    gap = float(np.min(np.abs(eigs)))
    return BottMatrix(B, pair.delta, gap, "trig")


def signature(H, gap_tol: Optional[float] = None) -> int:
    """Number of positive minus number of negative eigenvalues."""
    eigs = hermitian_eig(H)
    tol = DEFAULT_TOL.gap_per_dim * len(eigs) if gap_tol is None else gap_tol
    if np.min(np.abs(eigs)) <= tol:
        raise GapClosed(
            f"eigenvalue at {np.min(np.abs(eigs)):.3e} inside gap tolerance {tol:.1e}"
        )
    return int(np.sum(eigs > 0) - np.sum(eigs < 0))


def bott_index(
    pair: UnitaryPair,
    triple: Optional[StandardTriple] = None,
    use_trigpoly: bool = False,
    allow_uncertified: bool = False,
) -> int:
    """Half the signature of B(U, V).

    Certified for delta <= KAPPA_THRESHOLD; beyond that the gate raises
    unless the caller opts in, in which case the value is still computed but
    carries no guarantee.
    """
    if pair.delta > KAPPA_THRESHOLD and not allow_uncertified:
        raise ThresholdExceeded(
            f"delta = {pair.delta:.6f} exceeds certified threshold {KAPPA_THRESHOLD}"
        )
    bm = build_B(pair, triple, use_trigpoly)
    sig = signature(bm.B)
    if sig % 2 != 0:
        raise NumericalInconsistency(f"signature {sig} is odd")
    return sig // 2


def measured_gap(bm: BottMatrix) -> float:
    return bm.gap


def threshold_consistency() -> dict:
    """Compare the stored threshold with the recomputed envelope root.

    Returned mapping carries the stored constant, the root of the bound
    envelope, and whether the root falls inside [0.2060, 0.2061].  Kept as a
    callable check (not an import-time assertion) so the library stays usable
    while the discrepancy between the stored constant and the recomputed
    tables is documented by the test suite.
    """
    from . import bounds

    root = bounds.beta_root()
    return {
        "stored": KAPPA_THRESHOLD,
        "beta_root": root,
        "bracket": (0.2060, 0.2061),
        "consistent": 0.2060 <= root <= 0.2061,
    }
