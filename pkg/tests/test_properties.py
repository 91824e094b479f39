import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from naimark.complement import naimark_complement
from naimark.errors import NotUnitNorm, ScalingDegenerate, TooLarge
from naimark.frames import classify
from naimark.instances import random_bessel, random_unit_norm
from naimark.properties import (
    cross_gram_negation,
    rip_complement_check,
    rip_constant,
    scaled_complement,
    subset_carryover,
)

PHI = (1 + np.sqrt(5)) / 2


def icosahedron_lines():
    v = np.array([[0, 1, PHI], [0, 1, -PHI], [1, PHI, 0], [1, -PHI, 0], [PHI, 0, 1], [-PHI, 0, 1]], float).T
    return v / np.linalg.norm(v, axis=0)


def rip_oracle(f, L):
    # singular values of each column subset, one subset at a time
    best = 0.0
    for size in range(1, L + 1):
        for j in itertools.combinations(range(f.shape[1]), size):
            s = np.linalg.svd(f[:, j], compute_uv=False)
            s2 = np.concatenate([s**2, np.zeros(size - len(s))])
            best = max(best, s2.max() - 1, 1 - s2.min())
    return best


def test_cross_gram_mercedes_benz(mb_parseval):
    g = naimark_complement(mb_parseval).G
    np.testing.assert_allclose((mb_parseval.T @ mb_parseval)[0, 1], -1 / 3, atol=1e-15)
    np.testing.assert_allclose((g.T @ g)[0, 1], 1 / 3, atol=1e-14)
    assert cross_gram_negation(mb_parseval, g)


def test_cross_gram_e1_and_perturbed(e1):
    g = naimark_complement(e1).G
    assert cross_gram_negation(e1, g)
    bad = g.copy()
    bad[0, 0] += 0.1
    assert not cross_gram_negation(e1, bad)


def test_subset_e1(e1):
    g = naimark_complement(e1).G
    rep = subset_carryover(e1, g, [0, 1])
    assert rep.f_orthogonal and rep.g_orthogonal and rep.passed
    np.testing.assert_allclose(np.sum(g**2, axis=0), [0.0, 0.75], atol=1e-15)


def test_subset_mercedes_benz(mb_parseval):
    g = naimark_complement(mb_parseval).G
    rep = subset_carryover(mb_parseval, g, range(3))
    assert rep.f_equal_norm and rep.g_equal_norm and rep.passed
    np.testing.assert_allclose(np.sum(g**2, axis=0), 1 / 3, atol=1e-14)


def test_subset_empty(e1):
    assert subset_carryover(e1, naimark_complement(e1).G, []).passed


def test_rip_orthonormal():
    assert rip_constant(np.eye(4), 3).delta == pytest.approx(0, abs=1e-15)


def test_rip_mercedes_benz(mb_unit):
    rep = rip_constant(mb_unit, 2)
    assert rep.delta == pytest.approx(0.5, abs=1e-14)
    assert rep.witness_subset == (0, 1) and rep.subset_count == 6


def test_rip_repeated_vector():
    rep = rip_constant([[1.0, 1.0]], 2)
    assert rep.delta == pytest.approx(1.0)


def test_rip_errors():
    with pytest.raises(NotUnitNorm):
        rip_constant([[2.0, 1.0]], 1)
    f = random_unit_norm(np.random.default_rng(0), 5, 40)
    with pytest.raises(TooLarge):
        rip_constant(f, 9)


@pytest.mark.parametrize("seed", range(5))
def test_rip_matches_oracles(seed):
    rng = np.random.default_rng(seed)
    f = random_unit_norm(rng, 3, 7, "complex")
    rep = rip_constant(f, 3)
    assert rep.delta == pytest.approx(rip_oracle(f, 3), abs=1e-12)
    fj = f[:, rep.witness_subset]
    a = rng.standard_normal((fj.shape[1], 1000)) + 1j * rng.standard_normal((fj.shape[1], 1000))
    ratio = np.sum(np.abs(fj @ a) ** 2, axis=0) / np.sum(np.abs(a) ** 2, axis=0)
    assert ratio.min() >= 1 - rep.delta - 1e-6 and ratio.max() <= 1 + rep.delta + 1e-6


def test_rip_transfer_mercedes_benz(mb_unit):
    rep = rip_complement_check(mb_unit, 2)
    assert rep.delta == pytest.approx(0.5) and rep.B == pytest.approx(1.5)
    assert rep.bound == pytest.approx(1.0, abs=1e-12)
    assert rep.delta_complement == pytest.approx(1.0, abs=1e-10)
    assert rep.passed


def test_rip_transfer_orthonormal_plus_repeat():
    f = np.hstack([np.eye(3), np.eye(3)[:, :1]])
    rep = rip_complement_check(f, 2)
    assert rep.passed and rep.delta_complement <= rep.bound + 1e-9
    assert rip_oracle(scaled_complement(f)[0], 2) == pytest.approx(rep.delta_complement, abs=1e-12)


def test_rip_transfer_singletons(rng):
    rep = rip_complement_check(random_unit_norm(rng, 3, 6), 1)
    assert rep.delta == pytest.approx(0, abs=1e-12) and rep.delta_complement == pytest.approx(0, abs=1e-12)


def test_rip_transfer_degenerate():
    with pytest.raises(ScalingDegenerate):
        rip_complement_check(np.eye(3), 2)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 10), data=st.data())
def test_rip_transfer_property(seed, n, data):
    m = data.draw(st.integers(1, n))
    L = data.draw(st.integers(1, min(4, n)))
    f = random_unit_norm(np.random.default_rng(seed), m, n, "real")
    rep = rip_complement_check(f, L)
    assert rep.delta_complement <= rep.bound + 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_cross_gram_on_random(seed):
    rng = np.random.default_rng(seed)
    f = random_bessel(rng, int(rng.integers(1, 8)), int(rng.integers(1, 12)), "complex")
    assert cross_gram_negation(f, naimark_complement(f).G)


@pytest.mark.parametrize("frame", ["mb", "icosahedron"])
def test_equiangular_carryover(mb_unit, frame):
    f = mb_unit if frame == "mb" else icosahedron_lines()
    c = classify(f)
    assert c.is_equiangular
    g, b = scaled_complement(f)
    cg = classify(g)
    assert cg.is_equiangular
    assert cg.common_angle == pytest.approx(c.common_angle / (b - 1), abs=1e-9)


def test_icosahedron_angle():
    g, b = scaled_complement(icosahedron_lines())
    assert b == pytest.approx(2.0)
    assert g.shape[0] == 3
    assert classify(g).common_angle == pytest.approx(1 / np.sqrt(5), abs=1e-12)
