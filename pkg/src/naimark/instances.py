"""Seeded random and closed-form test instances.

Randomness comes from numpy's ``PCG64`` bit generator. A run seeded with
``seed`` gives case ``i`` the generator built from
``SeedSequence(seed).spawn(cases)[i]``, so every case is reproducible on
its own and independent of how many other cases are drawn.
"""
from __future__ import annotations

import numpy as np

from .fusion import FusionFrame
from .numkernel import COMPLEX, REAL


def case_rngs(seed: int, cases: int) -> list:
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(cases)]


def gaussian(rng, shape, field=REAL) -> np.ndarray:
    if field == COMPLEX:
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    return rng.standard_normal(shape)


def random_unitary(rng, n: int, field=REAL) -> np.ndarray:
    q, r = np.linalg.qr(gaussian(rng, (n, n), field))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_isometry(rng, rows: int, cols: int, field=REAL) -> np.ndarray:
    """``rows x cols`` matrix with orthonormal columns (``rows >= cols``)."""
    q, r = np.linalg.qr(gaussian(rng, (rows, cols), field))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_bessel(rng, m: int, n: int, field=REAL) -> np.ndarray:
    """Gaussian synthesis matrix with a random overall scale."""
    return gaussian(rng, (m, n), field) * rng.uniform(0.2, 3.0)


def random_parseval(rng, m: int, n: int, field=REAL) -> np.ndarray:
    """Rows of a random ``n x n`` unitary: a Parseval frame (``n >= m``)."""
    return random_isometry(rng, n, m, field).conj().T


def random_unit_norm(rng, m: int, n: int, field=REAL) -> np.ndarray:
    f = gaussian(rng, (m, n), field)
    return f / np.linalg.norm(f, axis=0)


def random_with_spectrum(rng, eigenvalues, n: int, field=REAL) -> np.ndarray:
    """Frame with ``N = n`` vectors whose frame operator has the given
    eigenvalues (``n >= len(eigenvalues)``)."""
    lam = np.asarray(eigenvalues, dtype=float)
    m = len(lam)
    u = random_unitary(rng, m, field)
    v = random_isometry(rng, n, m, field)
    return (u * np.sqrt(lam)) @ v.conj().T


def random_fusion_frame(rng, m: int, dims, field=REAL, weight_range=(0.3, 2.0)) -> FusionFrame:
    bases = [random_isometry(rng, m, d, field) for d in dims]
    weights = [float(rng.uniform(*weight_range)) for _ in dims]
    return FusionFrame(tuple(bases), tuple(weights), m)


def example_e1() -> np.ndarray:
    """Columns ``(1, 0)`` and ``(0, 1/2)``."""
    return np.array([[1.0, 0.0], [0.0, 0.5]])


def mercedes_benz(parseval: bool = False) -> np.ndarray:
    """Three vectors at 0, 120 and 240 degrees; unit norm, or scaled by
    ``sqrt(2/3)`` to make a Parseval frame."""
    t = 2 * np.pi * np.arange(3) / 3
    f = np.vstack([np.cos(t), np.sin(t)])
    return f * np.sqrt(2.0 / 3.0) if parseval else f


def lines_at(angle: float, weights=(1.0, 1.0)) -> FusionFrame:
    """Two lines in the plane separated by ``angle``."""
    a = np.array([[1.0], [0.0]])
    b = np.array([[np.cos(angle)], [np.sin(angle)]])
    return FusionFrame((a, b), tuple(weights), 2)
