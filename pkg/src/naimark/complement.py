"""Naimark complements of arbitrary Bessel sequences.

The sequence is first completed to a tight frame ``[F H]`` with bound ``T``
(``T = B`` for the minimal completion, ``T = C`` when padding). Scaled by
``1/sqrt(T)`` its rows are orthonormal; extending them to a unitary and
reading off the new rows gives ``[G H2]``. The complement is ``G``, stored
in coordinates of the orthogonal complement of the row space, so ``G`` has
``N - K`` rows (minimal) or ``N`` rows (padded).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .completion import complete_to_tight
from .errors import DegenerateInput, InvalidInput
from .frames import DEFAULT_MULT_TOL, SpectralData, as_frame, gram, spectral
from .numkernel import adjoint, as_matrix, complete_orthonormal_rows, max_abs


@dataclass(frozen=True)
class NaimarkResult:
    """Complement ``G`` together with everything used to build it.

    ``target_bound`` is ``B`` for the minimal completion and the pad bound
    ``C`` otherwise; the columns of ``[[F, H], [G, H2]] / sqrt(target_bound)``
    form a unitary of size ``embedding_dim``.
    """

    F: np.ndarray
    G: np.ndarray
    H: np.ndarray
    H2: np.ndarray
    B: float
    K: int
    target_bound: float
    embedding_dim: int
    pad: Optional[float] = None

    def embedding(self) -> np.ndarray:
        top = np.hstack([self.F, self.H])
        bottom = np.hstack([self.G, self.H2])
        return np.vstack([top, bottom]) / np.sqrt(self.target_bound)

    @property
    def expected_rank(self) -> int:
        n = self.F.shape[1]
        return n if self.pad is not None else n - self.K


def naimark_complement(
    f,
    pad: float | None = None,
    mult_tol: float = DEFAULT_MULT_TOL,
    spec: SpectralData | None = None,
) -> NaimarkResult:
    """Build the Naimark complement of the columns of ``f``.

    Parameters
    ----------
    f : array_like
        ``M x N`` synthesis matrix of a Bessel sequence.
    pad : float, optional
        Complete to a ``pad``-tight frame (``pad > B``) with ``M`` added
        vectors instead of the minimal ``B``-tight completion.
    mult_tol : float
        Relative tolerance for the multiplicity ``K`` of the top eigenvalue.
    spec : SpectralData, optional
        Precomputed eigensystem. Passing one with a different eigenbasis
        yields a different, unitarily equivalent complement.
    """
    f = as_frame(f)
    if spec is None:
        spec = spectral(f, mult_tol)
    if not spec.B > 0:
        raise DegenerateInput("all-zero input has no Naimark complement")
    comp = complete_to_tight(f, spec, pad=pad)
    t = comp.target_bound
    n = f.shape[1]
    dtype = np.result_type(f.dtype, comp.H.dtype)
    rows = np.hstack([f, comp.H]).astype(dtype) / np.sqrt(t)
    # eigenvalues inside the top cluster differ from B by up to mult_tol
    new_rows = complete_orthonormal_rows(rows, tol=1e-9 + 2 * spec.mult_tol)
    scaled = np.sqrt(t) * new_rows
    return NaimarkResult(
        F=f,
        G=scaled[:, :n],
        H=comp.H,
        H2=scaled[:, n:],
        B=spec.B,
        K=spec.K,
        target_bound=t,
        embedding_dim=rows.shape[1],
        pad=pad,
    )


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)


@dataclass(frozen=True)
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def residual(self, name: str) -> float:
        for c in self.checks:
            if c.name == name:
                return c.residual
        raise KeyError(name)


def verify_complement(f, result: NaimarkResult, tol: float = 1e-9) -> VerificationReport:
    """Check the defining identities of a complement.

    Residuals (all compared against ``tol * target_bound``):

    * ``gram_identity``: ``G*G + F*F - T I``
    * ``direct_sum_orthogonality``: ``<f_n, f_n'> + <g_n, g_n'>`` for
      ``n != n'``
    * ``direct_sum_norms``: ``|f_n|^2 + |g_n|^2 - T``
    * ``embedding_unitarity``: ``E*E - I`` for the full embedding matrix
    * ``rank``: deviation of the numerical rank of ``G`` from ``N - K``
      (``N`` when padded), which pins its span to the orthogonal
      complement of the original row space inside the embedding.
    """
    f = as_frame(f)
    g = as_matrix(result.G) if result.G.size else np.zeros((0, f.shape[1]))
    n = f.shape[1]
    if g.shape[1] != n:
        raise InvalidInput(f"complement has {g.shape[1]} columns, expected {n}")
    t = result.target_bound
    bound = tol * t
    combined = gram(g) + gram(f)
    diag = np.real(np.diag(combined))
    off = combined - np.diag(np.diag(combined))
    emb = result.embedding()
    unitarity = max_abs(adjoint(emb) @ emb - np.eye(emb.shape[1]))
    if g.size:
        sv = np.linalg.svd(g, compute_uv=False)
        rank = int(np.sum(sv > 1e-8 * np.sqrt(t)))
    else:
        rank = 0
    checks = [
        Check("gram_identity", max_abs(combined - t * np.eye(n)), bound),
        Check("direct_sum_orthogonality", max_abs(off), bound),
        Check("direct_sum_norms", max_abs(diag - t), bound),
        Check("embedding_unitarity", unitarity, bound),
        Check("rank", float(abs(rank - result.expected_rank)), 0.0),
    ]
    return VerificationReport(checks)


@dataclass(frozen=True)
class ComplementBounds:
    lower: Optional[float]
    upper: Optional[float]
    complement_is_empty: bool


def complement_bounds(spec: SpectralData, n: int, pad: float | None = None) -> ComplementBounds:
    """Optimal frame bounds of the complement for its own span.

    The nonzero eigenvalues of ``G G*`` are ``T - lambda_m`` for the
    eigenvalues ``lambda_m`` of ``F F*`` that also belong to ``F* F``
    (``m <= min(M, N)``) and lie below the top cluster, together with
    ``T`` itself repeated ``N - M`` times when ``N > M``. For a frame with
    ``N >= M`` and minimal completion this gives lower bound
    ``B - lambda_{K+1}`` and upper bound ``B`` (``N != M``) or
    ``B - lambda_M`` (``N = M``). Padding to ``C`` behaves as ``K = 0``.
    """
    lam = spec.eigenvalues
    m = spec.M
    if pad is None:
        t, start = spec.B, spec.K
    else:
        t, start = float(pad), 0
    values = [t - lam[i] for i in range(start, min(m, n))]
    if n > m:
        values.append(t)
    if not values:
        return ComplementBounds(None, None, True)
    return ComplementBounds(float(min(values)), float(max(values)), False)


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    gram_residual: float
    unitary: Optional[np.ndarray] = None
    alignment_residual: Optional[float] = None


def _polar_unitary(a: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(a)
    return u @ vh


def unitary_equivalence(g1, g2, tol: float = 1e-9) -> EquivalenceResult:
    """Decide whether ``g2 = U g1`` for some unitary ``U``.

    Two families are unitarily equivalent exactly when their Gram matrices
    agree; that comparison (relative to the larger Gram entry) decides the
    answer. When both matrices have the same, full row rank the aligning
    unitary is recovered by orthogonal Procrustes, ``U = polar(g2 g1*)``.
    """
    g1, g2 = np.asarray(g1), np.asarray(g2)
    if g1.ndim != 2 or g2.ndim != 2 or g1.shape[1] != g2.shape[1]:
        raise InvalidInput("both families need the same number of columns")
    gr1, gr2 = gram(g1), gram(g2)
    resid = max_abs(gr1 - gr2)
    scale = max(max_abs(gr1), max_abs(gr2), 1.0)
    equivalent = resid <= tol * scale
    if not equivalent or g1.shape != g2.shape:
        return EquivalenceResult(bool(equivalent), resid)
    r = g1.shape[0]
    if r == 0:
        return EquivalenceResult(True, resid, np.zeros((0, 0)), 0.0)
    s1 = np.linalg.svd(g1, compute_uv=False)
    if s1[-1] <= 1e-8 * max(s1[0], 1.0):
        return EquivalenceResult(True, resid)
    u = _polar_unitary(g2 @ adjoint(g1))
    return EquivalenceResult(True, resid, u, max_abs(u @ g1 - g2))


def verify_pair(f, g, bound: float | None = None, tol: float = 1e-9) -> VerificationReport:
    """Identity checks for a complement given without its completion.

    Same residuals as :func:`verify_complement` except the embedding
    unitarity and rank checks, which need the added vectors. ``bound``
    defaults to the optimal upper bound of ``f``.
    """
    f = as_frame(f)
    g = as_matrix(g) if np.size(g) else np.zeros((0, f.shape[1]))
    n = f.shape[1]
    if g.shape[1] != n:
        raise InvalidInput(f"complement has {g.shape[1]} columns, expected {n}")
    t = spectral(f).B if bound is None else float(bound)
    combined = gram(g) + gram(f)
    off = combined - np.diag(np.diag(combined))
    return VerificationReport([
        Check("gram_identity", max_abs(combined - t * np.eye(n)), tol * t),
        Check("direct_sum_orthogonality", max_abs(off), tol * t),
        Check("direct_sum_norms", max_abs(np.real(np.diag(combined)) - t), tol * t),
    ])
