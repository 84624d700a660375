"""Small dense kernels used by the objectives.

Matrices are 2-D float ``numpy`` arrays.  The routines are written out
(partially pivoted LU, cyclic Jacobi, Cholesky) rather than delegated to
LAPACK so that their tolerances are explicit; sizes are at most a few
dozen rows.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ConditioningError

PIVOT_RTOL = 1e-12


def _square(M) -> np.ndarray:
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ArgumentError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ArgumentError("matrix has non-finite entries")
    return A


def lu_factor(M, pivot: bool = True):
    """Doolittle LU, with partial pivoting unless ``pivot`` is false.

    Returns ``(LU, perm, sign, singular)`` where ``LU`` packs the unit-lower
    and upper factors, ``perm`` is the row permutation and ``sign`` its
    parity.  ``singular`` is set when a pivot falls below
    ``1e-12 * max|M|`` (without pivoting: when a pivot is not positive
    beyond that tolerance, which for symmetric input means not PD).
    """
    A = _square(M).copy()
    n = A.shape[0]
    perm = np.arange(n)
    sign = 1.0
    scale = np.max(np.abs(A)) if n else 0.0
    tol = PIVOT_RTOL * scale
    singular = scale == 0.0 and n > 0
    for k in range(n):
        p = k + int(np.argmax(np.abs(A[k:, k]))) if pivot else k
        if (abs(A[p, k]) if pivot else A[p, k]) <= tol:
            singular = True
            continue
        if p != k:
            A[[k, p]] = A[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        A[k + 1:, k] /= A[k, k]
        A[k + 1:, k + 1:] -= np.outer(A[k + 1:, k], A[k, k + 1:])
    return A, perm, sign, singular


def lu_det(M) -> float:
    A = _square(M)
    if A.shape[0] == 0:
        return 1.0
    LU, _, sign, singular = lu_factor(A)
    if singular:
        return 0.0
    return float(sign * np.prod(np.diag(LU)))


def lu_solve(LU: np.ndarray, perm: np.ndarray, B) -> np.ndarray:
    B = np.asarray(B, dtype=float)
    X = B[perm].copy()
    n = LU.shape[0]
    for i in range(n):
        X[i] -= LU[i, :i] @ X[:i]
    for i in range(n - 1, -1, -1):
        X[i] = (X[i] - LU[i, i + 1:] @ X[i + 1:]) / LU[i, i]
    return X


def solve(M, B) -> np.ndarray:
    LU, perm, _, singular = lu_factor(M)
    if singular:
        raise ConditioningError("matrix is singular to working precision")
    return lu_solve(LU, perm, B)


def trace_of_inverse(M) -> float:
    """``tr(M^{-1})`` for symmetric positive definite ``M``."""
    A = _square(M)
    n = A.shape[0]
    if n == 0:
        return 0.0
    # unpivoted elimination is stable on SPD input and its pivots certify definiteness
    LU, perm, _, singular = lu_factor(A, pivot=False)
    if singular:
        raise ConditioningError("matrix is not positive definite to working tolerance")
    inv = lu_solve(LU, perm, np.eye(n))
    return float(np.trace(inv))


@dataclass
class SymEigenResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int


def sym_eigen(M, tol: float = 1e-12, max_sweeps: int = 100) -> SymEigenResult:
    """Cyclic Jacobi eigendecomposition; eigenvalues sorted descending."""
    A = _square(M).copy()
    n = A.shape[0]
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-10 * max(1.0, np.max(np.abs(A), initial=0.0))):
        raise ArgumentError("sym_eigen requires a symmetric matrix")
    A = 0.5 * (A + A.T)
    V = np.eye(n)
    norm = np.linalg.norm(A)
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        off = np.abs(A - np.diag(np.diag(A)))
        if n < 2 or off.max() < tol * max(norm, 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J with J the (p, q) rotation
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap = A[p, :].copy()
                aq = A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    w = np.diag(A).copy()
    order = np.argsort(-w, kind="stable")
    return SymEigenResult(w[order], V[:, order], sweeps)


def eigvalsh_desc(M) -> np.ndarray:
    return sym_eigen(M).eigenvalues


def spectral_norm(M) -> float:
    A = np.asarray(M, dtype=float)
    if A.size == 0:
        return 0.0
    G = A.T @ A if A.shape[1] <= A.shape[0] else A @ A.T
    top = sym_eigen(G).eigenvalues[0]
    return float(np.sqrt(max(top, 0.0)))


def cholesky(M) -> np.ndarray:
    A = _square(M)
    n = A.shape[0]
    L = np.zeros_like(A)
    tol = PIVOT_RTOL * (np.max(np.abs(A)) if n else 0.0)
    for j in range(n):
        d = A[j, j] - L[j, :j] @ L[j, :j]
        if d <= tol:
            raise ConditioningError(f"matrix is not positive definite (pivot {d:.3e} at column {j})")
        L[j, j] = np.sqrt(d)
        L[j + 1:, j] = (A[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    return L
