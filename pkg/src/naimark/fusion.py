"""Fusion frames, their Naimark complements, and subspace geometry.

A fusion frame is a list of weighted subspaces, each given by a matrix
with orthonormal columns. Its Naimark complement is obtained by stacking
the weighted bases into one ordinary frame, taking that frame's complement
and regrouping the complement columns block by block.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .complement import NaimarkResult, naimark_complement
from .errors import DegenerateInput, InvalidInput
from .frames import DEFAULT_MULT_TOL, spectral
from .numkernel import adjoint, as_matrix, hermitian_eigendecomposition, max_abs

log = logging.getLogger(__name__)

ORTHONORMAL_TOL = 1e-10


@dataclass(frozen=True)
class FusionFrame:
    """Weighted subspaces of an ``ambient_dim``-dimensional space.

    ``bases[k]`` is an ``ambient_dim x d_k`` matrix with orthonormal
    columns and ``weights[k] > 0`` its weight.
    """

    bases: tuple
    weights: tuple
    ambient_dim: int

    def __post_init__(self):
        if len(self.bases) != len(self.weights):
            raise InvalidInput("one weight per block is required")
        bases = []
        for k, (q, w) in enumerate(zip(self.bases, self.weights)):
            q = as_matrix(q)
            if q.shape[0] != self.ambient_dim or q.shape[1] < 1:
                raise InvalidInput(f"block {k} has shape {q.shape}, ambient dimension is {self.ambient_dim}")
            if max_abs(adjoint(q) @ q - np.eye(q.shape[1])) > ORTHONORMAL_TOL:
                raise InvalidInput(f"block {k} basis is not orthonormal")
            if not (np.isfinite(w) and w > 0):
                raise InvalidInput(f"block {k} weight must be positive, got {w}")
            bases.append(q)
        object.__setattr__(self, "bases", tuple(bases))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

    @classmethod
    def from_blocks(cls, blocks: Sequence, ambient_dim: int | None = None) -> "FusionFrame":
        """Build from ``(basis, weight)`` pairs."""
        blocks = list(blocks)
        if ambient_dim is None:
            if not blocks:
                raise InvalidInput("ambient_dim is required for an empty fusion frame")
            ambient_dim = np.asarray(blocks[0][0]).shape[0]
        return cls(tuple(b for b, _ in blocks), tuple(w for _, w in blocks), int(ambient_dim))

    @property
    def dims(self) -> tuple:
        return tuple(q.shape[1] for q in self.bases)

    def __len__(self):
        return len(self.bases)

    def projection(self, k: int) -> np.ndarray:
        q = self.bases[k]
        return q @ adjoint(q)


def fusion_operator(ff: FusionFrame) -> np.ndarray:
    """``S = sum_k nu_k^2 P_k``."""
    dtype = np.result_type(np.float64, *[q.dtype for q in ff.bases])
    s = np.zeros((ff.ambient_dim, ff.ambient_dim), dtype=dtype)
    for k, w in enumerate(ff.weights):
        s += w**2 * ff.projection(k)
    return s


def fusion_to_frame(ff: FusionFrame) -> np.ndarray:
    """Concatenate the weighted block bases ``nu_k f_kj`` into one frame."""
    if not len(ff):
        return np.zeros((ff.ambient_dim, 0))
    return np.hstack([w * q for q, w in zip(ff.bases, ff.weights)])


def fusion_bounds(ff: FusionFrame) -> tuple:
    """Optimal ``(A, B)`` of the fusion frame."""
    lam = hermitian_eigendecomposition(fusion_operator(ff)).eigenvalues
    return float(max(lam[-1], 0.0)), float(lam[0])


def _polar(a: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(a, full_matrices=False)
    return u @ vh


@dataclass(frozen=True)
class FusionComplement:
    """Complement fusion frame plus the frame-level complement behind it.

    ``block_map[k]`` is the position in ``frame`` of original block ``k``,
    or ``None`` when the block was dropped (``nu_k^2 = B`` leaves no
    complement vectors).
    """

    frame: FusionFrame
    naimark: NaimarkResult
    dropped: tuple = field(default_factory=tuple)
    block_map: tuple = field(default_factory=tuple)

    @property
    def B(self) -> float:
        return self.naimark.B


def fusion_naimark(ff: FusionFrame, mult_tol: float = DEFAULT_MULT_TOL) -> FusionComplement:
    """Naimark complement fusion frame with weights ``sqrt(B - nu_k^2)``.

    The complement columns of block ``k`` are orthogonal with common norm
    ``sqrt(B - nu_k^2)``; their polar factor (which is that column
    scaling up to rounding) is used as the block basis.
    """
    if not len(ff):
        raise DegenerateInput("fusion frame has no blocks")
    f = fusion_to_frame(ff)
    spec = spectral(f, mult_tol)
    if not spec.B > 0:
        raise DegenerateInput("fusion frame has zero upper bound")
    result = naimark_complement(f, spec=spec)
    b = spec.B
    bases, weights, dropped, block_map = [], [], [], []
    start = 0
    for k, (q, w) in enumerate(zip(ff.bases, ff.weights)):
        d = q.shape[1]
        gk = result.G[:, start:start + d]
        start += d
        if w**2 >= b * (1.0 - mult_tol) or gk.shape[0] == 0:
            dropped.append(k)
            block_map.append(None)
            log.info("block %d has nu^2 = B and no complement vectors; dropped", k)
            continue
        block_map.append(len(bases))
        bases.append(_polar(gk))
        weights.append(np.sqrt(b - w**2))
    comp = FusionFrame(tuple(bases), tuple(weights), result.G.shape[0])
    return FusionComplement(comp, result, tuple(dropped), tuple(block_map))


@dataclass(frozen=True)
class PrincipalAngles:
    """Principal angles (ascending) and their cosines (descending)."""

    angles: np.ndarray
    cosines: np.ndarray


def _from_cosines(cosines) -> PrincipalAngles:
    c = np.clip(np.sort(np.asarray(cosines, dtype=float))[::-1], 0.0, 1.0)
    return PrincipalAngles(angles=np.arccos(c), cosines=c)


def _check_orthonormal(q, name):
    q = as_matrix(q)
    if max_abs(adjoint(q) @ q - np.eye(q.shape[1])) > 1e-9:
        raise InvalidInput(f"{name} does not have orthonormal columns")
    return q


def principal_angles(q1, q2) -> PrincipalAngles:
    """Principal angles between the column spaces of ``q1`` and ``q2``.

    The cosines are the singular values of ``q1* q2``.
    """
    q1 = _check_orthonormal(q1, "first basis")
    q2 = _check_orthonormal(q2, "second basis")
    if q1.shape[0] != q2.shape[0]:
        raise InvalidInput(f"bases live in different spaces: {q1.shape[0]} vs {q2.shape[0]} rows")
    return _from_cosines(np.linalg.svd(adjoint(q1) @ q2, compute_uv=False))


def complement_angle_factor(nu1: float, nu2: float, b: float) -> float:
    if nu1**2 >= b or nu2**2 >= b:
        raise InvalidInput("weights must satisfy nu^2 < B")
    return nu1 / np.sqrt(b - nu1**2) * nu2 / np.sqrt(b - nu2**2)


def predicted_complement_angles(theta: PrincipalAngles, nu1: float, nu2: float, b: float) -> PrincipalAngles:
    """Angles between complement blocks: cosines scale by
    ``nu1 / sqrt(B - nu1^2) * nu2 / sqrt(B - nu2^2)``."""
    return _from_cosines(complement_angle_factor(nu1, nu2, b) * np.asarray(theta.cosines))


def chordal_distance_squared(q1, q2) -> tuple:
    """``d - sum cos^2`` evaluated from the angles and from ``tr(P1 P2)``.

    Returns the pair ``(via_angles, via_trace)``.
    """
    q1 = _check_orthonormal(q1, "first basis")
    q2 = _check_orthonormal(q2, "second basis")
    if q1.shape[1] != q2.shape[1]:
        raise InvalidInput("chordal distance needs subspaces of equal dimension")
    d = q1.shape[1]
    cos = principal_angles(q1, q2).cosines
    trace = np.real(np.trace((q1 @ adjoint(q1)) @ (q2 @ adjoint(q2))))
    return float(d - np.sum(cos**2)), float(d - trace)


def chordal_distance(q1, q2) -> float:
    return float(np.sqrt(max(chordal_distance_squared(q1, q2)[1], 0.0)))


@dataclass(frozen=True)
class ChordalReport:
    k1: int
    k2: int
    d: int
    r: float
    measured: float
    predicted: float
    original: float
    statement_form: Optional[float]
    tolerance: float

    @property
    def residual(self) -> float:
        return abs(self.measured - self.predicted)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def chordal_complement_check(
    ff: FusionFrame,
    k1: int,
    k2: int,
    tol: float = 1e-8,
    complement: FusionComplement | None = None,
) -> ChordalReport:
    """Compare ``d_c^2(W'_1, W'_2)`` on the actual complement blocks with
    ``(1 - r) d + r d_c^2(W_1, W_2)``, where
    ``r = nu1^2/(B - nu1^2) * nu2^2/(B - nu2^2)``.

    ``statement_form`` evaluates the same expression with ``1 - nu^2`` in
    place of ``B - nu^2`` (only defined for weights below 1); it agrees
    with ``predicted`` when ``B = 1``.
    """
    for k in (k1, k2):
        if not 0 <= k < len(ff):
            raise InvalidInput(f"block index {k} out of range")
    if ff.dims[k1] != ff.dims[k2]:
        raise InvalidInput("chordal distance needs blocks of equal dimension")
    if complement is None:
        complement = fusion_naimark(ff)
    b = complement.B
    nu1, nu2 = ff.weights[k1], ff.weights[k2]
    if nu1**2 >= b or nu2**2 >= b:
        raise InvalidInput("both weights must satisfy nu^2 < B")
    c1, c2 = complement.block_map[k1], complement.block_map[k2]
    if c1 is None or c2 is None:
        raise InvalidInput("block was dropped from the complement")
    d = ff.dims[k1]
    r = nu1**2 / (b - nu1**2) * nu2**2 / (b - nu2**2)
    original = chordal_distance_squared(ff.bases[k1], ff.bases[k2])[1]
    measured = chordal_distance_squared(complement.frame.bases[c1], complement.frame.bases[c2])[1]
    statement = None
    if nu1 < 1 and nu2 < 1:
        rs = nu1**2 / (1 - nu1**2) * nu2**2 / (1 - nu2**2)
        statement = (1 - rs) * d + rs * original
    return ChordalReport(
        k1=k1, k2=k2, d=d, r=r,
        measured=measured,
        predicted=(1 - r) * d + r * original,
        original=original,
        statement_form=statement,
        tolerance=tol,
    )


def pairwise_cosines(ff: FusionFrame) -> dict:
    """Principal-angle cosines for every pair of blocks ``i < j``."""
    out = {}
    for i in range(len(ff)):
        for j in range(i + 1, len(ff)):
            out[(i, j)] = principal_angles(ff.bases[i], ff.bases[j]).cosines
    return out


@dataclass(frozen=True)
class FusionEquivalence:
    equivalent: bool
    residual: float
    unitary: np.ndarray
    iterations: int


def _check_compatible(ff1: FusionFrame, ff2: FusionFrame, tol: float):
    if len(ff1) != len(ff2) or ff1.dims != ff2.dims or ff1.ambient_dim != ff2.ambient_dim:
        raise InvalidInput("fusion frames differ in block count, block dimensions or ambient dimension")
    if any(abs(a - b) > tol * max(a, b, 1.0) for a, b in zip(ff1.weights, ff2.weights)):
        raise InvalidInput("fusion frames have different weights")


def _projection_residual(u, ff1, ff2) -> float:
    res = 0.0
    for k in range(len(ff1)):
        moved = u @ ff2.projection(k) @ adjoint(u)
        res = max(res, max_abs(moved - ff1.projection(k)))
    return res


def _clusters(values, tol):
    groups, current = [], [0]
    for i in range(1, len(values)):
        if abs(values[i] - values[current[-1]]) <= tol:
            current.append(i)
        else:
            groups.append(current)
            current = [i]
    groups.append(current)
    return groups


def _spectral_alignment(p1, p2, dim, dtype):
    """Initial ``U`` with ``U P2_k U* ~ P1_k`` from a generic combination.

    A fixed random combination ``S = sum c_k P_k`` is diagonalised on both
    sides; ``U`` must carry eigenspaces of ``S2`` to those of ``S1``. The
    remaining unitary freedom inside each eigenspace (a phase for simple
    eigenvalues) is fixed by walking the graph of nonzero couplings
    between eigenspaces, one Procrustes solve per edge.
    """
    coeffs = np.random.default_rng(0x5EED).uniform(1.0, 2.0, len(p1))
    s1 = sum(c * p for c, p in zip(coeffs, p1))
    s2 = sum(c * p for c, p in zip(coeffs, p2))
    e1 = hermitian_eigendecomposition(s1)
    e2 = hermitian_eigendecomposition(s2)
    groups = _clusters(e1.eigenvalues, 1e-8 * max(1.0, abs(e1.eigenvalues[0])))
    a1 = [adjoint(e1.eigenvectors) @ p @ e1.eigenvectors for p in p1]
    a2 = [adjoint(e2.eigenvectors) @ p @ e2.eigenvectors for p in p2]

    def coupling(i, j):
        gi, gj = groups[i], groups[j]
        best, pair = 0.0, None
        for x, y in zip(a1, a2):
            blk2 = y[np.ix_(gi, gj)]
            mag = max_abs(blk2)
            if mag > best:
                best, pair = mag, (x[np.ix_(gi, gj)], blk2)
        return best, pair

    n = len(groups)
    w = [None] * n
    for root in range(n):
        if w[root] is not None:
            continue
        w[root] = np.eye(len(groups[root]), dtype=dtype)
        queue = [root]
        while queue:
            i = queue.pop(0)
            for j in range(n):
                if w[j] is not None:
                    continue
                mag, pair = coupling(i, j)
                if mag <= 1e-6:
                    continue
                b1, b2 = pair
                w[j] = _polar(adjoint(b1) @ w[i] @ b2)
                queue.append(j)
    d = np.zeros((dim, dim), dtype=dtype)
    for g, wg in zip(groups, w):
        d[np.ix_(g, g)] = wg
    return e1.eigenvectors @ d @ adjoint(e2.eigenvectors)


def fusion_unitary_equivalence(
    ff1: FusionFrame,
    ff2: FusionFrame,
    block_unitaries_hint: Sequence | None = None,
    tol: float = 1e-8,
    max_iter: int = 100,
) -> FusionEquivalence:
    """Look for one unitary ``U`` with ``U W2_k = W1_k`` for every block.

    Without a hint, ``U`` is initialised by :func:`_spectral_alignment` and
    refined by the iteration ``U <- polar(sum_k P1_k U P2_k)``, which
    increases ``sum_k tr(P1_k U P2_k U*)`` monotonically. The answer is
    positive when ``max_k |U P2_k U* - P1_k|`` drops to ``tol``.

    ``block_unitaries_hint[k]``, when given, is the unitary ``U_k`` with
    ``Q2_k = W Q1_k U_k`` for some global ``W`` (different orthonormal
    bases of the same original blocks); ``U`` then follows from a single
    orthogonal Procrustes step.
    """
    _check_compatible(ff1, ff2, tol)
    n = len(ff1)
    dim = ff1.ambient_dim
    q1, q2 = ff1.bases, ff2.bases
    dtype = np.result_type(np.float64, *[q.dtype for q in q1 + q2])
    if n == 0:
        return FusionEquivalence(True, 0.0, np.eye(dim, dtype=dtype), 0)

    if block_unitaries_hint is not None:
        w2 = np.asarray(ff1.weights) ** 2
        vs = [adjoint(as_matrix(h)) for h in block_unitaries_hint]
        acc = sum(w2[k] * q1[k] @ adjoint(q2[k] @ vs[k]) for k in range(n))
        u, _, vh = np.linalg.svd(acc)
        u = u @ vh
        res = _projection_residual(u, ff1, ff2)
        return FusionEquivalence(bool(res <= tol), res, u, 1)

    p1 = [ff1.projection(k) for k in range(n)]
    p2 = [ff2.projection(k) for k in range(n)]
    u = _spectral_alignment(p1, p2, dim, dtype)
    best_u, best = u, _projection_residual(u, ff1, ff2)
    it = 0
    for it in range(1, max_iter + 1):
        if best <= tol:
            break
        new_u = _polar(sum(a @ u @ b for a, b in zip(p1, p2)))
        res = _projection_residual(new_u, ff1, ff2)
        if res < best:
            best_u, best = new_u, res
        if max_abs(new_u - u) < 1e-14:
            break
        u = new_u
    return FusionEquivalence(bool(best <= tol), best, best_u, it)
