"""Frames and Bessel sequences given by their synthesis matrices.

A frame with ``N`` vectors in an ``M``-dimensional space is stored as the
``M x N`` synthesis matrix whose columns are the frame vectors. Nothing
requires the columns to span, so Bessel sequences use the same carrier.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInput
from .numkernel import adjoint, as_matrix, hermitian_eigendecomposition

DEFAULT_MULT_TOL = 1e-9


def as_frame(f, field: str | None = None) -> np.ndarray:
    f = as_matrix(f, field)
    if f.shape[0] < 1 or f.shape[1] < 1:
        raise InvalidInput(f"a frame needs M >= 1 and N >= 1, got shape {f.shape}")
    return f


def frame_operator(f) -> np.ndarray:
    """Return ``F F*`` (M x M)."""
    f = as_frame(f)
    return f @ adjoint(f)


def gram(f) -> np.ndarray:
    """Return ``F* F``; entry ``(n, n')`` is ``<f_n', f_n>``."""
    f = as_matrix(f)
    return adjoint(f) @ f


@dataclass(frozen=True)
class SpectralData:
    """Frame operator eigensystem plus the derived bounds.

    Attributes
    ----------
    eigenvalues : ndarray
        ``lambda_1 >= ... >= lambda_M``, clipped at zero.
    eigenvectors : ndarray
        Orthonormal columns ``u_m`` paired with ``eigenvalues``.
    B, A : float
        Optimal upper and lower frame bounds (``A`` may be 0).
    K : int
        Multiplicity of the top eigenvalue, counted with relative
        tolerance ``mult_tol``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    B: float
    A: float
    K: int
    mult_tol: float

    @property
    def M(self) -> int:
        return len(self.eigenvalues)


def top_multiplicity(eigenvalues, mult_tol: float) -> int:
    lam = np.asarray(eigenvalues)
    return int(np.sum(lam >= lam[0] * (1.0 - mult_tol)))


def spectral(f, mult_tol: float = DEFAULT_MULT_TOL) -> SpectralData:
    if not 0 < mult_tol < 1:
        raise InvalidInput("mult_tol must lie in (0, 1)")
    eig = hermitian_eigendecomposition(frame_operator(f))
    lam = np.clip(eig.eigenvalues, 0.0, None)
    return SpectralData(
        eigenvalues=lam,
        eigenvectors=eig.eigenvectors,
        B=float(lam[0]),
        A=float(lam[-1]),
        K=top_multiplicity(lam, mult_tol),
        mult_tol=mult_tol,
    )


def with_eigenvectors(spec: SpectralData, eigenvectors) -> SpectralData:
    """Same spectrum, different (caller-supplied) eigenbasis.

    The caller is responsible for ``eigenvectors`` being an eigenbasis for
    the same eigenvalues; used to exercise eigenbasis-independence.
    """
    u = as_matrix(eigenvectors)
    if u.shape != spec.eigenvectors.shape:
        raise InvalidInput("eigenbasis has the wrong shape")
    return SpectralData(spec.eigenvalues, u, spec.B, spec.A, spec.K, spec.mult_tol)


@dataclass(frozen=True)
class Classification:
    is_frame: bool
    is_tight: bool
    is_parseval: bool
    is_equal_norm: bool
    is_equiangular: bool
    common_norm: Optional[float] = None
    common_angle: Optional[float] = None


def classify(f, tol: float = DEFAULT_MULT_TOL) -> Classification:
    """Structural flags of a frame.

    Tolerances are relative to the upper bound ``B``. ``common_angle`` is
    the shared value of ``|<f_n, f_n'>|`` (not normalized by the norms).
    Any frame with ``N >= 2`` whose off-diagonal Gram magnitudes agree,
    including all-orthogonal ones, counts as equiangular; ``N = 1`` never
    does.
    """
    if not 0 < tol < 1:
        raise InvalidInput("tol must lie in (0, 1)")
    f = as_frame(f)
    spec = spectral(f, mult_tol=tol)
    scale = spec.B if spec.B > 0 else 1.0
    is_frame = spec.A > tol * scale
    is_tight = is_frame and spec.K == spec.M
    is_parseval = is_tight and abs(spec.B - 1.0) <= tol

    norms = np.linalg.norm(f, axis=0)
    is_equal_norm = float(norms.max() - norms.min()) <= tol * max(float(norms.max()), 1e-300)
    common_norm = float(norms.mean()) if is_equal_norm else None

    is_equiangular = False
    common_angle = None
    n = f.shape[1]
    if is_equal_norm and n >= 2:
        g = np.abs(gram(f))
        off = g[~np.eye(n, dtype=bool)]
        if float(off.max() - off.min()) <= tol * scale:
            is_equiangular = True
            common_angle = float(off.mean())
    return Classification(
        is_frame=bool(is_frame),
        is_tight=bool(is_tight),
        is_parseval=bool(is_parseval),
        is_equal_norm=bool(is_equal_norm),
        is_equiangular=is_equiangular,
        common_norm=common_norm,
        common_angle=common_angle,
    )
