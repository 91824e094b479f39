"""Dense linear algebra primitives with deterministic sign conventions.

Every matrix in this package is a two dimensional numpy array of dtype
``float64`` (real field) or ``complex128`` (complex field). The helpers here
wrap LAPACK through numpy and pin down the choices LAPACK leaves free
(eigenvector phases, ordering of null space vectors) so that results are
reproducible run to run.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NotIsometric

REAL = "real"
COMPLEX = "complex"


def as_matrix(a, field: str | None = None) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D float64/complex128 array.

    A 1-D input is read as a single row. ``field`` forces the scalar field;
    by default it is inferred from the dtype.
    """
    arr = np.asarray(a)
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.ndim != 2:
        raise InvalidInput(f"expected a 2-D matrix, got shape {arr.shape}")
    if field is None:
        field = COMPLEX if np.iscomplexobj(arr) else REAL
    if field == REAL:
        if np.iscomplexobj(arr):
            if np.any(arr.imag != 0):
                raise InvalidInput("real field requested but entries have imaginary parts")
            arr = arr.real
        arr = np.array(arr, dtype=np.float64)
    elif field == COMPLEX:
        arr = np.array(arr, dtype=np.complex128)
    else:
        raise InvalidInput(f"unknown field {field!r}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("matrix has NaN or infinite entries")
    return arr


def field_of(a: np.ndarray) -> str:
    return COMPLEX if np.iscomplexobj(a) else REAL


def adjoint(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def _normalize_phases(vectors: np.ndarray, axis: int) -> np.ndarray:
    # Along ``axis``: make the first largest-magnitude entry of each vector
    # real and positive.
    v = np.moveaxis(np.array(vectors, copy=True), axis, 0)
    if v.size == 0:
        return np.moveaxis(v, 0, axis)
    idx = np.argmax(np.abs(v), axis=0)
    pivots = v[idx, np.arange(v.shape[1])]
    mags = np.abs(pivots)
    phase = np.ones_like(pivots)
    nz = mags > 0
    phase[nz] = pivots[nz] / mags[nz]
    v = v * np.conj(phase)[np.newaxis, :]
    if np.iscomplexobj(v):
        # Exact zero imaginary part on the pivot.
        v[idx, np.arange(v.shape[1])] = np.abs(v[idx, np.arange(v.shape[1])])
    # also clears negative zeros
    return np.moveaxis(v, 0, axis) + 0.0


@dataclass(frozen=True)
class EigResult:
    """Eigenvalues in descending order with matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def recompose(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ adjoint(u)


def hermitian_eigendecomposition(s, tol: float = 1e-10) -> EigResult:
    """Eigen-decompose a Hermitian matrix, largest eigenvalue first.

    Each eigenvector is rotated so that its first entry of largest modulus
    is real and positive.
    """
    s = as_matrix(s)
    if s.shape[0] != s.shape[1]:
        raise InvalidInput(f"matrix must be square, got {s.shape}")
    scale = max(max_abs(s), 1.0)
    if max_abs(s - adjoint(s)) > tol * scale:
        raise InvalidInput("matrix is not Hermitian")
    s = 0.5 * (s + adjoint(s))
    w, u = np.linalg.eigh(s)
    w = w[::-1].copy()
    u = _normalize_phases(u[:, ::-1], axis=0)
    return EigResult(eigenvalues=w, eigenvectors=u)


def singular_value_decomposition(a):
    """Thin SVD ``a = U diag(sigma) V*`` with ``sigma`` descending.

    Returns ``(U, sigma, V)``; note ``V`` itself, not its adjoint.
    """
    a = as_matrix(a)
    if min(a.shape) == 0:
        m, n = a.shape
        return np.zeros((m, 0), a.dtype), np.zeros(0), np.zeros((n, 0), a.dtype)
    u, sigma, vh = np.linalg.svd(a, full_matrices=False)
    return u, sigma, adjoint(vh)


def isometry_defect(rows: np.ndarray) -> float:
    """``max |R R* - I|`` for a matrix whose rows should be orthonormal."""
    r = rows.shape[0]
    return max_abs(rows @ adjoint(rows) - np.eye(r))


def complete_orthonormal_rows(r, tol: float = 1e-9) -> np.ndarray:
    """Extend orthonormal rows to a square unitary; return only the new rows.

    The new rows span the null space of ``r`` (taken from a full SVD), are
    ordered by the index of their largest-magnitude entry and phase
    normalized the same way as eigenvectors.
    """
    r = as_matrix(r)
    k, d = r.shape
    if k > d:
        raise InvalidInput(f"cannot have {k} orthonormal rows in dimension {d}")
    defect = isometry_defect(r)
    if defect > tol:
        raise NotIsometric(f"rows are not orthonormal (defect {defect:.3e})")
    if k == d:
        return np.zeros((0, d), dtype=r.dtype)
    if k == 0:
        return np.eye(d, dtype=r.dtype)
    _, _, vh = np.linalg.svd(r, full_matrices=True)
    new = vh[k:]
    order = np.argsort(np.argmax(np.abs(new), axis=1), kind="stable")
    return _normalize_phases(new[order], axis=1)
