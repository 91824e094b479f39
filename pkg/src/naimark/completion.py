"""Completing a Bessel sequence to a tight frame by adding eigen-directions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInput, PadBoundTooSmall
from .frames import DEFAULT_MULT_TOL, SpectralData, as_frame, spectral
from .numkernel import adjoint, as_matrix


def check_rows_vs_eigs(f, basis, lambdas, tol: float = 1e-9) -> bool:
    """Row test for an eigensystem of ``F F*``.

    Builds the ``M x N`` coefficient matrix with entries ``<f_n, e_m>`` and
    reports whether its rows are pairwise orthogonal with squared norms
    ``lambdas``. This holds exactly when the columns of ``basis`` are
    eigenvectors of the frame operator with those eigenvalues.
    """
    f = as_frame(f)
    basis = as_matrix(basis)
    lam = np.asarray(lambdas, dtype=float)
    m = f.shape[0]
    if basis.shape != (m, m) or lam.shape != (m,):
        raise InvalidInput(
            f"need an {m}x{m} basis and {m} eigenvalues, got {basis.shape} and {lam.shape}"
        )
    if np.any(lam < 0):
        raise InvalidInput("eigenvalues must be non-negative")
    coeffs = adjoint(basis) @ f
    rows = coeffs @ adjoint(coeffs)
    sq = np.real(np.diag(rows))
    off = rows - np.diag(np.diag(rows))
    orthogonal = np.max(np.abs(off), initial=0.0) <= tol * (lam.max() + 1.0)
    norms_ok = bool(np.all(np.abs(sq - lam) <= tol * (lam + 1.0)))
    return bool(orthogonal and norms_ok)


@dataclass(frozen=True)
class CompletionResult:
    """Added vectors ``H`` (as columns) and the tight bound of ``[F H]``."""

    H: np.ndarray
    target_bound: float
    pad: Optional[float] = None


def complete_to_tight(
    f,
    spec: SpectralData | None = None,
    pad: float | None = None,
    mult_tol: float = DEFAULT_MULT_TOL,
) -> CompletionResult:
    """Append vectors along eigen-directions so that ``[F H]`` is tight.

    With ``pad=None`` the bound is ``B`` and one vector
    ``sqrt(B - lambda_m) u_m`` is added for each ``m > K`` (the fewest
    possible). With ``pad=C`` (``C > B``) all ``M`` vectors
    ``sqrt(C - lambda_m) u_m`` are added.
    """
    f = as_frame(f)
    if spec is None:
        spec = spectral(f, mult_tol)
    lam, u = spec.eigenvalues, spec.eigenvectors
    if pad is None:
        target = spec.B
        idx = np.arange(spec.K, spec.M)
    else:
        target = float(pad)
        if not target > spec.B:
            raise PadBoundTooSmall(f"pad bound {target} must exceed B = {spec.B}")
        idx = np.arange(spec.M)
    # rounding can push lambda_m slightly above the target
    weights = np.sqrt(np.clip(target - lam[idx], 0.0, None))
    h = u[:, idx] * weights
    return CompletionResult(H=h, target_bound=target, pad=pad)
