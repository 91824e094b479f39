"""Properties that pass from a Bessel sequence to its Naimark complement.

Covers the negated cross Gram, orthogonal and equal-norm subsets, and the
restricted isometry property, whose optimal constant is found by exhaustive
enumeration of column subsets.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complement import naimark_complement
from .errors import InvalidInput, NotUnitNorm, ScalingDegenerate, TooLarge
from .frames import as_frame, classify, gram, spectral
from .numkernel import as_matrix, max_abs

SUBSET_GUARD = 10**6


def _upper_bound(f, bound):
    return spectral(f).B if bound is None else float(bound)


def cross_gram_residual(f, g) -> float:
    """``max |<g_n, g_n'> + <f_n, f_n'>|`` over ``n != n'``."""
    f = as_frame(f)
    g = as_matrix(g) if np.size(g) else np.zeros((0, f.shape[1]))
    if g.shape[1] != f.shape[1]:
        raise InvalidInput(f"column mismatch: {f.shape[1]} vs {g.shape[1]}")
    s = gram(f) + gram(g)
    return max_abs(s - np.diag(np.diag(s)))


def cross_gram_negation(f, g, tol: float = 1e-9, bound: float | None = None) -> bool:
    """True when ``<g_n, g_n'> = -<f_n, f_n'>`` for all distinct pairs.

    ``bound`` is the tight bound the complement was built for (defaults to
    the optimal upper bound of ``f``); the tolerance is ``tol * bound``.
    """
    return cross_gram_residual(f, g) <= tol * _upper_bound(f, bound)


@dataclass(frozen=True)
class SubsetReport:
    subset: tuple
    f_orthogonal: bool
    g_orthogonal: bool
    f_equal_norm: bool
    g_equal_norm: bool
    norm_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return (
            (not self.f_orthogonal or self.g_orthogonal)
            and (not self.f_equal_norm or self.g_equal_norm)
            and self.norm_residual <= self.tolerance
        )


def subset_carryover(f, g, subset, tol: float = 1e-9, bound: float | None = None) -> SubsetReport:
    """Orthogonality and equal-norm structure of ``f`` and ``g`` on ``subset``.

    ``norm_residual`` is ``max |(|g_n|^2 - (bound - |f_n|^2))| / bound`` on
    the subset, so it is at most ``tol`` for a genuine complement.
    """
    f = as_frame(f)
    g = as_matrix(g) if np.size(g) else np.zeros((0, f.shape[1]))
    idx = sorted(set(int(j) for j in subset))
    if any(j < 0 or j >= f.shape[1] for j in idx):
        raise InvalidInput("subset index out of range")
    t = _upper_bound(f, bound)
    fj, gj = f[:, idx], g[:, idx]

    def orthogonal(x):
        s = gram(x)
        return max_abs(s - np.diag(np.diag(s))) <= tol * t

    def equal_norm(x):
        sq = np.sum(np.abs(x) ** 2, axis=0)
        return sq.size == 0 or float(sq.max() - sq.min()) <= tol * t

    fsq = np.sum(np.abs(fj) ** 2, axis=0)
    gsq = np.sum(np.abs(gj) ** 2, axis=0)
    resid = float(np.max(np.abs(gsq - (t - fsq)), initial=0.0)) / t
    return SubsetReport(
        subset=tuple(idx),
        f_orthogonal=bool(orthogonal(fj)),
        g_orthogonal=bool(orthogonal(gj)),
        f_equal_norm=bool(equal_norm(fj)),
        g_equal_norm=bool(equal_norm(gj)),
        norm_residual=resid,
        tolerance=tol,
    )


@dataclass(frozen=True)
class RipReport:
    L: int
    delta: float
    witness_subset: tuple
    subset_count: int


def subset_count(n: int, L: int) -> int:
    return sum(math.comb(n, l) for l in range(1, L + 1))


def rip_constant(f, L: int, guard: int = SUBSET_GUARD, unit_tol: float = 1e-9) -> RipReport:
    """Optimal RIP constant of unit-norm columns over subsets of size <= L.

    For a subset ``J`` the best constant is the larger of
    ``lambda_max(Gram_J) - 1`` and ``1 - lambda_min(Gram_J)``. Subsets are
    visited by size and then lexicographically; the witness is the first
    subset reaching the maximum.
    """
    f = as_frame(f)
    n = f.shape[1]
    L = int(L)
    if not 1 <= L <= n:
        raise InvalidInput(f"L must satisfy 1 <= L <= N = {n}, got {L}")
    norms = np.linalg.norm(f, axis=0)
    if np.max(np.abs(norms - 1.0)) > unit_tol:
        raise NotUnitNorm("RIP constants need unit-norm vectors")
    count = subset_count(n, L)
    if count > guard:
        raise TooLarge(f"{count} subsets exceed the enumeration guard of {guard}")

    g = gram(f)
    per_size = []
    for size in range(1, L + 1):
        subsets = np.array(list(itertools.combinations(range(n), size)), dtype=np.intp)
        blocks = g[subsets[:, :, None], subsets[:, None, :]]
        eig = np.linalg.eigvalsh(blocks)
        per_size.append((subsets, np.maximum(eig[:, -1] - 1.0, 1.0 - eig[:, 0])))
    best = max(float(d.max()) for _, d in per_size)
    # first subset within rounding of the maximum
    cutoff = best - 1e-12 * (1.0 + abs(best))
    for subsets, deltas in per_size:
        hits = np.flatnonzero(deltas >= cutoff)
        if hits.size:
            witness = tuple(int(x) for x in subsets[hits[0]])
            break
    return RipReport(L=L, delta=max(best, 0.0), witness_subset=witness, subset_count=count)


@dataclass(frozen=True)
class RipTransferReport:
    L: int
    B: float
    delta: float
    delta_complement: float
    bound: float
    proof_display_bound: float
    tolerance: float
    witness: tuple
    witness_complement: tuple

    @property
    def passed(self) -> bool:
        return self.delta_complement <= self.bound + self.tolerance


def scaled_complement(f, tol: float = 1e-9):
    """Complement of a unit-norm frame rescaled to unit norm, and ``B``."""
    spec = spectral(f)
    if spec.B <= 1.0 + tol:
        raise ScalingDegenerate(f"B = {spec.B} is too close to 1 to rescale the complement")
    g = naimark_complement(f, spec=spec).G
    return g / np.sqrt(spec.B - 1.0), spec.B


def rip_complement_check(f, L: int, tol: float = 1e-9, guard: int = SUBSET_GUARD) -> RipTransferReport:
    """Compare the RIP constant of ``f`` with that of its rescaled complement.

    The complement's constant must not exceed ``delta / (B - 1)``. The
    weaker figure ``delta / sqrt(B - 1)`` is reported alongside for
    reference.
    """
    f = as_frame(f)
    first = rip_constant(f, L, guard)
    g, b = scaled_complement(f, tol)
    second = rip_constant(g, L, guard)
    return RipTransferReport(
        L=first.L,
        B=b,
        delta=first.delta,
        delta_complement=second.delta,
        bound=first.delta / (b - 1.0),
        proof_display_bound=first.delta / math.sqrt(b - 1.0),
        tolerance=tol,
        witness=first.witness_subset,
        witness_complement=second.witness_subset,
    )


def equiangular_transfer(f, tol: float = 1e-9) -> Optional[float]:
    """Predicted common angle of the rescaled complement of a unit-norm
    equiangular frame, ``|<f_n, f_n'>| / (B - 1)``; ``None`` if ``f`` is not
    equiangular."""
    c = classify(f, tol)
    if not c.is_equiangular:
        return None
    return c.common_angle / (spectral(f).B - 1.0)
