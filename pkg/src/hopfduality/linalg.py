"""Dense complex linear algebra at desk scale.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The Hermitian
eigensolver is a cyclic Jacobi method; rank, null-space and least-squares
computations are delegated to LAPACK through ``numpy.linalg``.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import NoConvergence, NotHermitian, RankDeficient

STRUCT_TOL = 1e-9
EIG_TOL = 1e-12
MAX_SWEEPS = 100


def as_cmatrix(A, name: str = "matrix") -> np.ndarray:
    """Return ``A`` as a finite 2-D complex128 array."""
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {A.shape}")
    if A.size and not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains NaN or Inf")
    return A


def max_abs(A) -> float:
    A = np.asarray(A)
    return float(np.max(np.abs(A))) if A.size else 0.0


def hermitian_eig(A, tol: float = STRUCT_TOL, conv_tol: float = EIG_TOL,
                  max_sweeps: int = MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : (n, n) array_like
        Hermitian input; ``max|A - A^H|`` must not exceed ``tol``.
    tol : float
        Hermiticity tolerance.
    conv_tol : float
        Sweeps stop once every off-diagonal entry is below
        ``conv_tol * max(1, max|A|)``.
    max_sweeps : int
        Sweep budget.

    Returns
    -------
    eigenvalues : (n,) ndarray of float, ascending
    U : (n, n) ndarray, unitary, with ``A = U diag(eigenvalues) U^H``
    """
    A = as_cmatrix(A, "A")
    n, m = A.shape
    if n != m:
        raise NotHermitian(f"matrix is not square: {A.shape}")
    if max_abs(A - A.conj().T) > tol:
        raise NotHermitian(f"max|A - A^H| = {max_abs(A - A.conj().T):.3e} > {tol:.1e}")
    A = 0.5 * (A + A.conj().T)
    V = np.eye(n, dtype=np.complex128)
    thresh = conv_tol * max(1.0, max_abs(A))

    for _ in range(max_sweeps + 1):
        off = np.abs(A - np.diag(np.diag(A)))
        if n < 2 or off.max() <= thresh:
            w = np.real(np.diag(A)).copy()
            order = np.argsort(w, kind="stable")
            return w[order], V[:, order]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= thresh:
                    continue
                phase = apq / r
                app, aqq = A[p, p].real, A[q, q].real
                theta = 0.5 * math.atan2(2.0 * r, aqq - app)
                c, s = math.cos(theta), math.sin(theta)
                # phase fix on column q, then a real Givens rotation
                W = np.array([[c, s], [-phase.conjugate() * s, phase.conjugate() * c]])
                cols = A[:, [p, q]] @ W
                A[:, p], A[:, q] = cols[:, 0], cols[:, 1]
                rows = W.conj().T @ A[[p, q], :]
                A[p, :], A[q, :] = rows[0], rows[1]
                A[p, q] = A[q, p] = 0.0
                A[p, p], A[q, q] = A[p, p].real, A[q, q].real
                vcols = V[:, [p, q]] @ W
                V[:, p], V[:, q] = vcols[:, 0], vcols[:, 1]
    raise NoConvergence(f"Jacobi did not converge within {max_sweeps} sweeps")


def kron(A, B) -> np.ndarray:
    """Kronecker product with index convention ``(i, k) -> i * rows(B) + k``."""
    return np.kron(np.asarray(A, dtype=np.complex128), np.asarray(B, dtype=np.complex128))


def lstsq(A, B):
    """Least-squares solution of ``A X = B``; returns ``(X, max residual)``."""
    A = as_cmatrix(A, "A")
    B = np.asarray(B, dtype=np.complex128)
    vec = B.ndim == 1
    B2 = B[:, None] if vec else B
    if A.shape[0] != B2.shape[0]:
        raise ValueError(f"row mismatch: {A.shape} vs {B.shape}")
    if A.shape[1] == 0:
        X = np.zeros((0, B2.shape[1]), dtype=np.complex128)
    else:
        X = np.linalg.lstsq(A, B2, rcond=None)[0]
    res = max_abs(A @ X - B2)
    return (X[:, 0] if vec else X), res


def solve_linear(A, B, tol: float = STRUCT_TOL) -> np.ndarray:
    """Solve ``A X = B`` exactly; raise :class:`RankDeficient` if no exact solution."""
    X, res = lstsq(A, B)
    if res > tol:
        raise RankDeficient(f"system has no exact solution (residual {res:.3e})")
    return X


def singular_values(A) -> np.ndarray:
    A = np.asarray(A, dtype=np.complex128)
    if A.size == 0:
        return np.zeros(0)
    return np.linalg.svd(A, compute_uv=False)


def _rank_from_sv(s, rtol, atol) -> int:
    if s.size == 0:
        return 0
    cut = max(atol, rtol * s[0])
    return int(np.sum(s > cut))


def rank(A, rtol: float = 1e-9, atol: float = 1e-12) -> int:
    return _rank_from_sv(singular_values(A), rtol, atol)


def null_space(A, rtol: float = 1e-9, atol: float = 1e-12) -> np.ndarray:
    """Orthonormal basis (as columns) of the kernel of ``A``."""
    A = np.asarray(A, dtype=np.complex128)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.complex128)
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    r = _rank_from_sv(s, rtol, atol)
    return vh[r:].conj().T.copy()


def orth(A, rtol: float = 1e-9, atol: float = 1e-12) -> np.ndarray:
    """Orthonormal basis (as columns) of the column space of ``A``."""
    A = np.asarray(A, dtype=np.complex128)
    if A.size == 0:
        return np.zeros((A.shape[0], 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(A, full_matrices=False)
    r = _rank_from_sv(s, rtol, atol)
    return u[:, :r].copy()


def complement(Q, n: int) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of the columns of ``Q`` in C^n."""
    if Q.shape[1] == 0:
        return np.eye(n, dtype=np.complex128)
    return null_space(Q.conj().T)


def psd_sqrt_pair(T, tol: float = STRUCT_TOL):
    """``(T^{1/2}, T^{-1/2})`` for a positive definite Hermitian ``T``."""
    w, U = hermitian_eig(T, tol=tol)
    if w[0] <= 0:
        raise ValueError("matrix is not positive definite")
    r = np.sqrt(w)
    return (U * r) @ U.conj().T, (U / r) @ U.conj().T
