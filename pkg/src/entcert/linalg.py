"""Dense complex-matrix kernel.

Hilbert-Schmidt inner products and norms, Kronecker products, partial
trace/transpose over a bipartite splitting, Hermitian eigendecomposition
and SVD.  Matrices are plain ``numpy`` arrays of ``complex128``; the
eigen/SVD work is delegated to LAPACK, the contract here is the residual
bound, not the algorithm.
"""

from __future__ import annotations

import numpy as np

from .config import TOLS
from .errors import DimensionMismatch, InvariantViolation, NumericalError


def as_matrix(entries) -> np.ndarray:
    """Coerce to a finite complex128 2-d array."""
    mat = np.asarray(entries, dtype=np.complex128)
    if mat.ndim != 2:
        raise InvariantViolation(f"shape: expected a 2-d matrix, got ndim={mat.ndim}")
    if not np.all(np.isfinite(mat)):
        raise InvariantViolation("finiteness: matrix contains NaN or Inf entries")
    return mat


def _require_square(mat: np.ndarray, what: str = "matrix") -> None:
    if mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch(f"shape: {what} must be square, got {mat.shape}")


def hermiticity_defect(mat: np.ndarray) -> float:
    """Largest entry of |A - A^dag|."""
    return float(np.abs(mat - mat.conj().T).max())


def frobenius_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dag B)."""
    a = as_matrix(a)
    b = as_matrix(b)
    _require_square(a)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape: operands differ, {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def frobenius_norm(a) -> float:
    """sqrt(Tr(A^dag A)); zero iff A = 0."""
    a = as_matrix(a)
    _require_square(a)
    return float(np.linalg.norm(a))


def kron(a, b) -> np.ndarray:
    """Kronecker product A (x) B."""
    return np.kron(as_matrix(a), as_matrix(b))


def _bipartite_tensor(rho: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    da, db = dims
    if da < 1 or db < 1:
        raise InvariantViolation(f"dims: subsystem dimensions must be positive, got {dims}")
    if rho.shape != (da * db, da * db):
        raise DimensionMismatch(
            f"dims: matrix is {rho.shape}, dims {dims} require {(da * db, da * db)}"
        )
    return rho.reshape(da, db, da, db)


def partial_trace(rho, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Trace out one subsystem of a (dA*dB)x(dA*dB) matrix, keeping ``"A"`` or ``"B"``."""
    t = _bipartite_tensor(as_matrix(rho), dims)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise InvariantViolation(f"keep: subsystem label must be 'A' or 'B', got {keep!r}")


def partial_transpose(rho, dims: tuple[int, int], on: str) -> np.ndarray:
    """Transpose the indices of one subsystem; involutive, trace preserving."""
    t = _bipartite_tensor(as_matrix(rho), dims)
    if on == "A":
        t = t.transpose(2, 1, 0, 3)
    elif on == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise InvariantViolation(f"on: subsystem label must be 'A' or 'B', got {on!r}")
    d = dims[0] * dims[1]
    return t.reshape(d, d)


def hermitian_eig(a, tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and unitary ``v``
    such that ``a = v @ diag(w) @ v^dag`` up to the residual tolerance.
    The input is symmetrized before factorization; inputs further than
    ``tol`` from Hermitian are rejected.
    """
    a = as_matrix(a)
    _require_square(a)
    tol = TOLS.hermiticity if tol is None else tol
    defect = hermiticity_defect(a)
    if defect > tol:
        raise InvariantViolation(
            f"hermiticity: max |A - A^dag| = {defect:.3e} exceeds tolerance {tol:.1e}"
        )
    try:
        w, v = np.linalg.eigh((a + a.conj().T) / 2)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition did not converge: {exc}") from exc
    return w, v


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition ``m = u @ diag(s) @ v^dag``, s descending."""
    m = as_matrix(m)
    try:
        u, s, vh = np.linalg.svd(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    return u, s, vh.conj().T
