"""Dense complex matrix kernel.

Everything downstream consumes these few primitives: operator norms,
commutators, unitary eigendecomposition with a fixed branch convention,
periodic functional calculus, polar parts, and trigonometric polynomials.

Matrices are plain ``numpy.ndarray`` objects with complex entries; helpers
here validate shape and finiteness at the boundary so the index modules can
assume well-formed input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL
from .errors import (
    DimensionMismatch,
    InvalidMatrix,
    NotHermitian,
    NotUnitary,
    SingularMatrix,
)

_SVD_CUTOVER = 512  # full SVD below, power iteration above


def as_matrix(X) -> np.ndarray:
    """Validate and return a finite square complex matrix."""
    A = np.asarray(X, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InvalidMatrix(f"expected a nonempty square matrix, got shape {A.shape}")
    if not (np.all(np.isfinite(A.real)) and np.all(np.isfinite(A.imag))):
        raise InvalidMatrix("matrix contains NaN or Inf entries")
    return A


def require_same_dim(A: np.ndarray, B: np.ndarray) -> None:
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")


def operator_norm(X) -> float:
    """Largest singular value of ``X``.

    Full SVD at moderate sizes; above the cutover a power iteration on
    ``X*X`` with relative tolerance 1e-12 takes over.
    """
    A = as_matrix(X)
    d = A.shape[0]
    if d <= _SVD_CUTOVER:
        return float(np.linalg.svd(A, compute_uv=False)[0])
    rng = np.random.default_rng(0)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    v /= np.linalg.norm(v)
    prev = 0.0
    for _ in range(10_000):
        w = A.conj().T @ (A @ v)
        cur = float(np.linalg.norm(w))
        if cur == 0.0:
            return 0.0
        v = w / cur
        if abs(cur - prev) <= 1e-12 * cur:
            break
        prev = cur
    return float(np.sqrt(cur))


def commutator_norm(U, V) -> float:
    """Operator norm of the commutator UV - VU."""
    A, B = as_matrix(U), as_matrix(V)
    require_same_dim(A, B)
    return operator_norm(A @ B - B @ A)


def _check_unitary(V: np.ndarray, tol: float) -> None:
    d = V.shape[0]
    err = operator_norm(V.conj().T @ V - np.eye(d))
    if err > tol:
        raise NotUnitary(f"||V*V - I|| = {err:.3e} exceeds tolerance {tol:.1e}")


def unitary_eig(V, tol: float = DEFAULT_TOL.unitary):
    """Diagonalize a unitary matrix.

    Returns ``(angles, Q)`` with ``V = Q diag(exp(i*angles)) Q*``.  Angles
    live in (-pi, pi]; an eigenvalue numerically at -1 maps to +pi, which
    makes the branch deterministic at the cut.
    """
    from scipy.linalg import schur

    A = as_matrix(V)
    _check_unitary(A, tol)
    T, Q = schur(A, output="complex")
    lam = np.diag(T)
    angles = np.angle(lam)
    # at the cut: -1 (from either side) goes to +pi
    angles[np.abs(lam + 1.0) <= DEFAULT_TOL.branch] = np.pi
    angles[angles <= -np.pi] = np.pi
    return angles, Q


def apply_periodic(fn, V, tol: float = DEFAULT_TOL.unitary) -> np.ndarray:
    """Apply a 2pi-periodic scalar function to the eigenangles of unitary V."""
    angles, Q = unitary_eig(V, tol)
    vals = np.asarray(fn(angles), dtype=complex)
    return (Q * vals) @ Q.conj().T


def apply_trigpoly(p: "TrigPoly", V, tol: float = DEFAULT_TOL.unitary) -> np.ndarray:
    """Evaluate a trigonometric polynomial at a unitary matrix.

    Horner accumulation in V for the nonnegative powers and in V* for the
    negative ones; no eigendecomposition involved, which makes this an
    independent route to the functional calculus.
    """
    A = as_matrix(V)
    _check_unitary(A, tol)
    d = A.shape[0]
    n = p.degree
    I = np.eye(d, dtype=complex)
    pos = p.coeff(n) * I
    for k in range(n - 1, 0, -1):
        pos = pos @ A
        pos += p.coeff(k) * I
    pos = pos @ A if n >= 1 else np.zeros_like(I)
    Astar = A.conj().T
    neg = p.coeff(-n) * I
    for k in range(n - 1, 0, -1):
        neg = neg @ Astar
        neg += p.coeff(-k) * I
    neg = neg @ Astar if n >= 1 else np.zeros_like(I)
    return pos + neg + p.coeff(0) * I


def unitary_part(A, singular_tol: float = DEFAULT_TOL.singular) -> np.ndarray:
    """Unitary factor of the polar decomposition, A (A*A)^(-1/2)."""
    M = as_matrix(A)
    P, s, Qh = np.linalg.svd(M)
    if s[-1] <= singular_tol * max(s[0], 1.0):
        raise SingularMatrix(
            f"smallest singular value {s[-1]:.3e} below gate; polar part unreliable"
        )
    return P @ Qh


def hermitian_eig(H, tol: float = DEFAULT_TOL.hermitian) -> np.ndarray:
    """Real spectrum of a hermitian matrix, ascending."""
    A = as_matrix(H)
    err = operator_norm(A - A.conj().T)
    if err > tol * max(1.0, operator_norm(A)):
        raise NotHermitian(f"||H - H*|| = {err:.3e} exceeds tolerance")
    return np.linalg.eigvalsh(A)


@dataclass(frozen=True)
class TrigPoly:
    """Finite Fourier series  sum_{k=-n..n} a_k e^{ikx}.

    ``coeffs[k + degree]`` holds a_k.  Real-valued series satisfy
    a_{-k} = conj(a_k).
    """

    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (2 * self.degree + 1,):
            raise InvalidMatrix(
                f"need {2 * self.degree + 1} coefficients for degree {self.degree}"
            )
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_sin_series(cls, amplitudes) -> "TrigPoly":
        """Build sum_k amplitudes[k-1] * sin(kx)."""
        amps = np.asarray(amplitudes, dtype=float)
        n = len(amps)
        c = np.zeros(2 * n + 1, dtype=complex)
        for k, a in enumerate(amps, start=1):
            c[n + k] = a / 2j
            c[n - k] = -a / 2j
        return cls(n, c)

    @classmethod
    def from_cos_series(cls, a0: float, amplitudes) -> "TrigPoly":
        """Build a0 + sum_k amplitudes[k-1] * cos(kx)."""
        amps = np.asarray(amplitudes, dtype=float)
        n = len(amps)
        c = np.zeros(2 * n + 1, dtype=complex)
        c[n] = a0
        for k, a in enumerate(amps, start=1):
            c[n + k] = a / 2
            c[n - k] = a / 2
        return cls(n, c)

    def coeff(self, k: int) -> complex:
        if abs(k) > self.degree:
            return 0.0 + 0.0j
        return complex(self.coeffs[k + self.degree])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.full(x.shape, self.coeffs[self.degree], dtype=complex)
        for k in range(1, self.degree + 1):
            e = np.exp(1j * k * x)
            out += self.coeffs[self.degree + k] * e
            out += self.coeffs[self.degree - k] * np.conj(e)
        return out

    def real_values(self, x) -> np.ndarray:
        """Evaluate a real-valued series, returning float values."""
        return np.real(self(x))

    def is_real_valued(self, tol: float = 1e-12) -> bool:
        flipped = np.conj(self.coeffs[::-1])
        return bool(np.max(np.abs(self.coeffs - flipped)) <= tol)

    def derivative_l1(self) -> float:
        """sum |k a_k|, the slope constant attached to this polynomial."""
        ks = np.arange(-self.degree, self.degree + 1)
        return float(np.sum(np.abs(ks * self.coeffs)))


@dataclass(frozen=True)
class UnitaryPair:
    """Validated pair of same-size unitaries with cached commutator norm."""

    U: np.ndarray
    V: np.ndarray
    delta: float
    unitary_tol: float = DEFAULT_TOL.unitary

    @property
    def dim(self) -> int:
        return self.U.shape[0]


def make_pair(U, V, unitary_tol: float = DEFAULT_TOL.unitary) -> UnitaryPair:
    """Validate unitarity of both matrices and cache delta = ||[U, V]||."""
    A, B = as_matrix(U), as_matrix(V)
    require_same_dim(A, B)
    _check_unitary(A, unitary_tol)
    _check_unitary(B, unitary_tol)
    return UnitaryPair(A, B, commutator_norm(A, B), unitary_tol)
