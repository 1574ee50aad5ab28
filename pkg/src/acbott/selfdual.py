"""Self-dual structure, Pfaffians, and the sign-valued index.

The dual of X is X^# = -Z X^T Z with Z = ((0, I), (-I, 0)).  Matrices fixed
by the dual form the quaternionic symmetry class; their spectra show Kramers
doubling.  For a self-dual almost-commuting pair the signature index always
vanishes, and the finer invariant is the sign of a modified Pfaffian of the
same block matrix, computed here through a basis rotation Q that turns
anti-self-dual matrices into skew-symmetric ones.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .config import DEFAULT_TOL, KAPPA_THRESHOLD
from .errors import (
    DimensionMismatch,
    IllConditionedSign,
    NoObstruction,
    NotAntiSelfDual,
    NotHermitian,
    NotSelfDual,
    NotSkewSymmetric,
    NumericalInconsistency,
    OddDimension,
    ThresholdExceeded,
)
from .linalg import (
    UnitaryPair,
    as_matrix,
    hermitian_eig,
    make_pair,
    operator_norm,
)


@dataclass(frozen=True)
class DualStructure:
    """Fixed basis data for half-dimension N: the 2N form Z and 4N rotation Q."""

    N: int
    Z: np.ndarray
    Q: np.ndarray


def dual_structure(N: int) -> DualStructure:
    if N < 1:
        raise DimensionMismatch("half-dimension must be positive")
    eye = np.eye(N)
    zero = np.zeros((N, N))
    Z = np.block([[zero, eye], [-eye, zero]]).astype(complex)
    eye2 = np.eye(2 * N)
    Q = np.block([[eye2, -1j * Z], [1j * Z, eye2]]) / np.sqrt(2.0)
    return DualStructure(N, Z, Q)


def _structure_for(dim: int, structure: Optional[DualStructure]) -> DualStructure:
    if dim % 2 != 0:
        raise DimensionMismatch(f"dual needs even dimension, got {dim}")
    if structure is None:
        return dual_structure(dim // 2)
    if 2 * structure.N != dim:
        raise DimensionMismatch(
            f"structure is for dimension {2 * structure.N}, matrix has {dim}"
        )
    return structure


def dual(X, structure: Optional[DualStructure] = None) -> np.ndarray:
    """X^# = -Z X^T Z.  Involutive and anti-multiplicative."""
    X = as_matrix(X)
    s = _structure_for(X.shape[0], structure)
    return -s.Z @ X.T @ s.Z


def selfdual_part(X, structure: Optional[DualStructure] = None) -> np.ndarray:
    return (as_matrix(X) + dual(X, structure)) / 2


def dual_tensor(X, structure: Optional[DualStructure] = None) -> np.ndarray:
    """Blockwise dual of a 4N-dim matrix: ((A,B),(C,D)) -> ((D#,-B#),(-C#,A#))."""
    X = as_matrix(X)
    dim = X.shape[0]
    if dim % 4 != 0:
        raise DimensionMismatch(f"block dual needs dimension 4N, got {dim}")
    half = dim // 2
    s = _structure_for(half, structure)
    A = X[:half, :half]
    B = X[:half, half:]
    C = X[half:, :half]
    D = X[half:, half:]
    return np.block(
        [[dual(D, s), -dual(B, s)], [-dual(C, s), dual(A, s)]]
    )


@dataclass(frozen=True)
class SelfDualPair:
    """Validated almost-commuting pair with U^# = U and V^# = V."""

    pair: UnitaryPair
    structure: DualStructure

    @property
    def N(self) -> int:
        return self.structure.N

    @property
    def delta(self) -> float:
        return self.pair.delta


def make_selfdual_pair(
    U,
    V,
    unitary_tol: float = DEFAULT_TOL.unitary,
    selfdual_tol: float = DEFAULT_TOL.selfdual,
) -> SelfDualPair:
    pair = make_pair(U, V, unitary_tol=unitary_tol)
    if pair.dim % 2 != 0:
        raise DimensionMismatch("self-dual pair needs even dimension")
    s = dual_structure(pair.dim // 2)
    for name, M in (("U", pair.U), ("V", pair.V)):
        drift = operator_norm(M - dual(M, s))
        if drift > selfdual_tol:
            raise NotSelfDual(f"{name} fails self-duality by {drift:.3e}")
    return SelfDualPair(pair, s)


# ---------------------------------------------------------------------------
# Pfaffian
# ---------------------------------------------------------------------------


def _check_skew(X, tol: float) -> np.ndarray:
    dim = X.shape[0]
    if dim % 2 != 0:
        raise OddDimension(f"Pfaffian needs even dimension, got {dim}")
    scale = max(1.0, float(np.max(np.abs(X))))
    drift = operator_norm(X + X.T)
    if drift > tol * scale:
        raise NotSkewSymmetric(f"skew-symmetry violated by {drift:.3e}")
    return (X - X.T) / 2


def _pfaffian_sign_log(X: np.ndarray) -> Tuple[complex, float]:
    """(phase, log magnitude) of the Pfaffian of an exactly skew X.

    Householder congruences P X P^T reduce X to skew tridiagonal form; each
    reflector contributes det = -1 and the Pfaffian of the tridiagonal matrix
    is the product of its odd-position superdiagonal entries.
    """
    T = np.array(X, dtype=complex)
    n = T.shape[0]
    if n == 0:
        return 1.0 + 0j, 0.0
    det_p = 1.0
    for k in range(n - 2):
        col = T[k + 1 :, k]
        nrm = float(np.linalg.norm(col))
        # a zero column is already reduced; it only kills the Pfaffian if the
        # vanishing entry lands at an even superdiagonal position, which the
        # final product detects
        if nrm == 0.0 or float(np.linalg.norm(col[1:])) <= 1e-18 * nrm:
            continue
        # exp(i arg) instead of z/|z|: safe for subnormal entries
        phase = np.exp(1j * np.angle(col[0])) if col[0] != 0 else 1.0
        v = col.copy()
        v[0] += phase * nrm
        v /= np.linalg.norm(v)
        T[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ T[k + 1 :, :])
        T[:, k + 1 :] -= 2.0 * np.outer(T[:, k + 1 :] @ v.conj(), v)
        det_p = -det_p
    phase_acc = complex(det_p)
    log_mag = 0.0
    for j in range(0, n - 1, 2):
        b = T[j, j + 1]
        a = abs(b)
        if a == 0.0:
            return 0j, -math.inf
        phase_acc *= np.exp(1j * np.angle(b))
        log_mag += math.log(a)
    return phase_acc, log_mag


def _pfaffian_parlett_reid(X: np.ndarray) -> complex:
    """Pivoted LTL^T elimination, kept as an independent cross-check."""
    T = np.array(X, dtype=complex)
    n = T.shape[0]
    sign = 1.0
    for k in range(n - 2):
        p = k + 1 + int(np.argmax(np.abs(T[k + 1 :, k])))
        if p != k + 1:
            T[[k + 1, p], :] = T[[p, k + 1], :]
            T[:, [k + 1, p]] = T[:, [p, k + 1]]
            sign = -sign
        piv = T[k + 1, k]
        if piv == 0:
            continue
        mu = T[k + 2 :, k] / piv
        T[k + 2 :, :] -= np.outer(mu, T[k + 1, :])
        T[:, k + 2 :] -= np.outer(T[:, k + 1], mu)
    out = complex(sign)
    for j in range(0, n - 1, 2):
        out *= T[j, j + 1]
    return out


def pfaffian(X, tol: float = DEFAULT_TOL.skew) -> complex:
    """Pfaffian of a complex skew-symmetric matrix; Pf(X)^2 = det(X).

    Below dimension 65 the Householder value is cross-checked against the
    pivoted LTL^T elimination; disagreement raises NumericalInconsistency.
    """
    X = as_matrix(X)
    S = _check_skew(X, tol)
    phase, log_mag = _pfaffian_sign_log(S)
    if log_mag == -math.inf:
        return 0j
    value = phase * math.exp(log_mag)
    # plain product overflows outside this window; skip the check there
    if S.shape[0] <= 64 and abs(log_mag) < 600.0:
        ref = _pfaffian_parlett_reid(S)
        scale = max(abs(value), abs(ref))
        if scale > 0.0 and abs(value - ref) > 1e-6 * scale:
            raise NumericalInconsistency(
                f"Pfaffian routes disagree: {value:.6e} vs {ref:.6e}"
            )
    return value


def _modified_pfaffian_sign_log(
    X: np.ndarray, s: DualStructure, tol: float
) -> Tuple[complex, float]:
    drift = operator_norm(X + dual_tensor(X, s))
    scale = max(1.0, operator_norm(X))
    if drift > tol * scale:
        raise NotAntiSelfDual(f"anti-self-duality violated by {drift:.3e}")
    Xa = (X - dual_tensor(X, s)) / 2
    S = s.Q.conj().T @ Xa @ s.Q
    S = (S - S.T) / 2
    return _pfaffian_sign_log(S)


def modified_pfaffian(
    X, structure: Optional[DualStructure] = None, tol: float = 1e-7
) -> complex:
    """Pf(Q* X Q) for anti-self-dual X; squares to det(X)."""
    X = as_matrix(X)
    dim = X.shape[0]
    if dim % 4 != 0:
        raise DimensionMismatch(f"modified Pfaffian needs dimension 4N, got {dim}")
    s = _structure_for(dim // 2, structure)
    phase, log_mag = _modified_pfaffian_sign_log(X, s, tol)
    if log_mag == -math.inf:
        return 0j
    return phase * math.exp(log_mag)


# ---------------------------------------------------------------------------
# The sign index
# ---------------------------------------------------------------------------


def _pfaffian_sign(B: np.ndarray, gap: float, structure: DualStructure) -> int:
    """Sign of the modified Pfaffian, with the magnitude-floor check.

    The Pfaffian of an invertible hermitian anti-self-dual matrix is real and
    bounded below in magnitude by gap^(dim/2), so a computed magnitude under
    that floor is flagged.
    """
    phase, log_mag = _modified_pfaffian_sign_log(B, structure, tol=1e-7)
    if log_mag == -math.inf:
        raise NumericalInconsistency("modified Pfaffian vanished")
    if abs(phase.imag) > 1e-6:
        raise NumericalInconsistency(
            f"modified Pfaffian phase {phase:.3e} is not real"
        )
    if gap > 0:
        floor = (B.shape[0] / 2) * math.log(gap)
        if log_mag < floor - 1e-9:
            warnings.warn(
                "Pfaffian magnitude below the gap-certified floor; "
                "sign may be unreliable",
                IllConditionedSign,
            )
    return 1 if phase.real > 0 else -1


def pfaffian_bott_index(
    sd: SelfDualPair,
    use_trigpoly: bool = False,
    allow_uncertified: bool = False,
) -> int:
    """Sign of the modified Pfaffian of the block matrix of the pair.

    Certified for delta <= KAPPA_THRESHOLD.
    """
    from .bott import build_B

    if sd.delta > KAPPA_THRESHOLD and not allow_uncertified:
        raise ThresholdExceeded(
            f"delta = {sd.delta:.6f} exceeds certified threshold {KAPPA_THRESHOLD}"
        )
    bm = build_B(sd.pair, use_trigpoly=use_trigpoly)
    return _pfaffian_sign(bm.B, bm.gap, sd.structure)


def selfdual_distance_bounds(
    sdA: SelfDualPair,
    sdB: SelfDualPair,
    kappa2_a: Optional[int] = None,
    kappa2_b: Optional[int] = None,
) -> float:
    """Lower bound on ||U_A - U_B|| + ||V_A - V_B|| when the signs differ.

    A commuting second pair always carries sign +1, which recovers the
    commuting-target form 1/5 + (1/5) sqrt(1 - 5 delta^2).  The sign
    arguments let callers supply externally known values instead of
    recomputing them.
    """
    for sd in (sdA, sdB):
        if sd.delta > KAPPA_THRESHOLD:
            raise ThresholdExceeded(
                f"delta = {sd.delta:.6f} exceeds certified threshold"
            )
    ka = pfaffian_bott_index(sdA) if kappa2_a is None else int(kappa2_a)
    kb = pfaffian_bott_index(sdB) if kappa2_b is None else int(kappa2_b)
    if ka == kb:
        raise NoObstruction("equal signs carry no distance obstruction")
    return (
        math.sqrt(1 - 5 * sdA.delta**2) + math.sqrt(1 - 5 * sdB.delta**2)
    ) / 5


def check_kramers(
    H,
    structure: Optional[DualStructure] = None,
    pair_tol: float = 1e-7,
) -> bool:
    """True when the spectrum is doubly degenerate (Kramers pairing)."""
    H = as_matrix(H)
    s = _structure_for(H.shape[0], structure)
    if operator_norm(H - H.conj().T) > DEFAULT_TOL.hermitian * max(
        1.0, float(np.max(np.abs(H)))
    ):
        raise NotHermitian("Kramers check needs a hermitian matrix")
    drift = operator_norm(H - dual(H, s))
    if drift > 1e-7 * max(1.0, operator_norm(H)):
        raise NotSelfDual(f"self-duality violated by {drift:.3e}")
    eigs = hermitian_eig(H)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    gaps = eigs[1::2] - eigs[0::2]
    return bool(np.all(np.abs(gaps) <= pair_tol * scale))
