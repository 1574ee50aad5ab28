"""Winding-number invariant of an almost-commuting unitary pair.

The multiplicative commutator W = VUV*U* of a pair with ||[U,V]|| < 2 has
spectrum bounded away from -1, so the principal logarithm of W is defined and
omega = Tr((1/2pi i) log W) is an integer.  A determinant-path method serves
as an independent oracle for the same number.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL
from .errors import (
    InvariantUndefined,
    MeshTooCoarse,
    NoObstruction,
    NumericalInconsistency,
)
from .linalg import UnitaryPair, unitary_eig

# delta must stay strictly below 2; at 2 the spectrum of W can touch -1
DELTA_GATE = 2.0 - 1e-9


@dataclass(frozen=True)
class WindingResult:
    omega: int
    delta: float
    valid: bool
    min_angle_gap_at_pi: float  # distance of the spectrum of VUV*U* to -1
    raw: float                  # pre-rounding trace value


def _multiplicative_commutator(pair: UnitaryPair) -> np.ndarray:
    U, V = pair.U, pair.V
    return V @ U @ V.conj().T @ U.conj().T


def winding_number(pair: UnitaryPair) -> WindingResult:
    """Integer winding invariant via the trace of the principal logarithm."""
    if pair.delta > DELTA_GATE:
        raise InvariantUndefined(
            f"delta = {pair.delta:.6f} is not < 2; winding invariant undefined"
        )
    W = _multiplicative_commutator(pair)
    angles, _ = unitary_eig(W, tol=10 * pair.unitary_tol)
    margin = float(np.min(np.abs(np.exp(1j * angles) + 1.0)))
    raw = float(np.sum(angles) / (2 * np.pi))
    nearest = round(raw)
    if abs(raw - nearest) > DEFAULT_TOL.rounding_hard:
        raise NumericalInconsistency(
            f"winding trace {raw:.6f} is {abs(raw - nearest):.2e} from an integer"
        )
    return WindingResult(int(nearest), pair.delta, True, margin, raw)


def winding_via_path(pair: UnitaryPair, steps: int = 1024) -> int:
    """Winding of t -> det(W^t) by stepwise phase unwrapping.

    Determinants are computed by LU factorization at each step, so the only
    shared ingredient with :func:`winding_number` is the matrix W itself.
    Steps double automatically until every per-step phase change is below
    pi/2.
    """
    if pair.delta > DELTA_GATE:
        raise InvariantUndefined(
            f"delta = {pair.delta:.6f} is not < 2; winding invariant undefined"
        )
    if steps < 64:
        raise MeshTooCoarse("need at least 64 path steps")
    W = _multiplicative_commutator(pair)
    angles, Q = unitary_eig(W, tol=10 * pair.unitary_tol)
    for _ in range(8):
        ts = np.linspace(0.0, 1.0, steps + 1)
        args = np.empty(steps + 1)
        for i, t in enumerate(ts):
            Wt = (Q * np.exp(1j * t * angles)) @ Q.conj().T
            args[i] = np.angle(np.linalg.det(Wt))
        jumps = np.angle(np.exp(1j * np.diff(args)))  # wrapped to (-pi, pi]
        if np.max(np.abs(jumps)) < np.pi / 2:
            total = float(np.sum(jumps))
            return int(round(total / (2 * np.pi)))
        steps *= 2
    raise MeshTooCoarse("phase steps stayed >= pi/2 after repeated refinement")


def distance_bound_commuting(pair: UnitaryPair) -> float:
    """Lower bound on the distance from the pair to any commuting unitary pair.

    Valid whenever the winding invariant is nonzero; the distance is measured
    as ||U - U1|| + ||V - V1||.
    """
    result = winding_number(pair)
    if result.omega == 0:
        raise NoObstruction("winding invariant is zero; no distance bound claimed")
    return 1.0 + float(np.sqrt(max(0.0, 1.0 - pair.delta ** 2 / 4.0)))


def distance_bound_index_change(pairA: UnitaryPair, pairB: UnitaryPair) -> float:
    """Lower bound on the distance between two pairs with different invariants."""
    ra, rb = winding_number(pairA), winding_number(pairB)
    if ra.omega == rb.omega:
        raise NoObstruction("equal winding invariants; no distance bound claimed")
    da, db = pairA.delta, pairB.delta
    return float(
        np.sqrt(max(0.0, 1.0 - da ** 2 / 4.0)) + np.sqrt(max(0.0, 1.0 - db ** 2 / 4.0))
    )
