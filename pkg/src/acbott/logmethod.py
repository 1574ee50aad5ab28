"""Log-method variant of the block matrix.

Instead of the bump-function triple, take iK to be the principal logarithm
of V and use f1(x) = x/pi, g1 = 0, h1(x) = sqrt(1 - x^2/pi^2).  These are
merely Borel functions of V, but the resulting matrix B_L is cheaper to
assemble and its sign index provably agrees with the trigonometric one for
delta <= 1/8.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bott import BottMatrix, assemble_blocks
from .config import DEFAULT_TOL, KAPPA_THRESHOLD, LOG_THRESHOLD
from .errors import (
    LogMethodUncertified,
    SelfDualityLost,
    ThresholdExceeded,
)
from .linalg import UnitaryPair, as_matrix, operator_norm, unitary_eig
from .selfdual import (
    DualStructure,
    SelfDualPair,
    _pfaffian_sign,
    dual,
    selfdual_part,
)


@dataclass(frozen=True)
class PrincipalLog:
    """Hermitian K with e^{iK} = V, eigenvalues in [-pi, pi]."""

    K: np.ndarray
    branch_margin: float  # distance of the spectrum of V to -1


def principal_log(
    V,
    structure: Optional[DualStructure] = None,
    tol: float = DEFAULT_TOL.unitary,
) -> PrincipalLog:
    """Principal logarithm of a unitary: angles taken in (-pi, pi], -1 -> +pi.

    With a structure given, K is symmetrized to exact self-duality.  A large
    symmetrization drift means an eigenvalue pair straddles the branch cut
    (one angle near +pi, its partner near -pi), where no continuous self-dual
    logarithm exists; that case is refused rather than silently averaged.
    """
    V = as_matrix(V)
    angles, Q = unitary_eig(V, tol=tol)
    margin = float(np.min(np.abs(np.exp(1j * angles) + 1.0)))
    K = (Q * angles) @ Q.conj().T
    K = (K + K.conj().T) / 2
    if structure is not None:
        drift = operator_norm(K - dual(K, structure))
        if drift > 1e-6:
            # a degenerate pair at -1 can come out of the eigensolver with
            # angles on opposite sides of the cut; recompute with the cut
            # moved to the midpoint of the widest spectral gap, then rewrap
            order = np.sort(angles)
            gaps = np.diff(np.append(order, order[0] + 2.0 * np.pi))
            widest = int(np.argmax(gaps))
            shift = order[widest] + gaps[widest] / 2.0 - np.pi
            angles2, Q2 = unitary_eig(V * np.exp(-1j * shift), tol=tol)
            wrapped = np.angle(np.exp(1j * (angles2 + shift)))
            K = (Q2 * wrapped) @ Q2.conj().T
            K = (K + K.conj().T) / 2
            drift = operator_norm(K - dual(K, structure))
        if drift > 1e-6:
            raise SelfDualityLost(
                f"self-duality drift {drift:.3e} in the logarithm; "
                "spectrum splits across the branch cut"
            )
        K = selfdual_part(K, structure)
        K = (K + K.conj().T) / 2
    return PrincipalLog(K, margin)


def build_BL(
    pair: UnitaryPair,
    structure: Optional[DualStructure] = None,
) -> BottMatrix:
    """Assemble B_L(U, V); diagonal blocks are exactly +-K/pi."""
    plog = principal_log(pair.V, structure, tol=pair.unitary_tol)
    lam, W = np.linalg.eigh(plog.K)
    lam = np.clip(lam, -np.pi, np.pi)
    hvals = np.sqrt(1.0 - (lam / np.pi) ** 2)
    hV = (W * hvals) @ W.conj().T
    hV = (hV + hV.conj().T) / 2
    fV = plog.K / np.pi
    zero = np.zeros_like(fV)
    B = assemble_blocks(fV, zero, hV, pair.U)
    eigs = np.linalg.eigvalsh((B + B.conj().T) / 2)
    gap = float(np.min(np.abs(eigs)))
    return BottMatrix(B, pair.delta, gap, "log")


def kappa2_log(sd: SelfDualPair, allow_uncertified: bool = False) -> int:
    """Sign index from B_L; certified to agree with the trig method for
    delta <= 1/8, soft-flagged up to the trig threshold, refused beyond it
    unless the caller opts in."""
    if sd.delta > KAPPA_THRESHOLD and not allow_uncertified:
        raise ThresholdExceeded(
            f"delta = {sd.delta:.6f} exceeds certified threshold {KAPPA_THRESHOLD}"
        )
    if LOG_THRESHOLD < sd.delta <= KAPPA_THRESHOLD:
        warnings.warn(
            f"delta = {sd.delta:.6f} is above the log-method threshold "
            f"{LOG_THRESHOLD}; the log and trig signs are not certified "
            "to agree here",
            LogMethodUncertified,
        )
    bm = build_BL(sd.pair, sd.structure)
    return _pfaffian_sign(bm.B, bm.gap, sd.structure)
