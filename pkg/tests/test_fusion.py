import numpy as np
import pytest

from naimark.errors import InvalidInput
from naimark.frames import frame_operator
from naimark.fusion import (
    FusionFrame,
    chordal_complement_check,
    chordal_distance,
    chordal_distance_squared,
    fusion_naimark,
    fusion_operator,
    fusion_to_frame,
    fusion_unitary_equivalence,
    pairwise_cosines,
    predicted_complement_angles,
    principal_angles,
)
from naimark.instances import lines_at, random_fusion_frame, random_isometry, random_unitary


def cos_sq_oracle(q1, q2):
    # cos^2 of the principal angles are the top eigenvalues of Q1* P2 Q1
    p2 = q2 @ q2.conj().T
    ev = np.sort(np.linalg.eigvalsh(q1.conj().T @ p2 @ q1))[::-1]
    return np.clip(ev[: min(q1.shape[1], q2.shape[1])], 0, 1)


def test_fusion_operator_examples():
    ff = FusionFrame((np.eye(3),), (1.0,), 3)
    np.testing.assert_array_equal(fusion_operator(ff), np.eye(3))
    np.testing.assert_allclose(fusion_operator(lines_at(np.pi / 2)), np.eye(2), atol=1e-15)


@pytest.mark.parametrize("theta", [0.3, np.pi / 3, 1.2])
def test_fusion_operator_two_lines(theta):
    ev = np.sort(np.linalg.eigvalsh(fusion_operator(lines_at(theta))))
    np.testing.assert_allclose(ev, [1 - abs(np.cos(theta)), 1 + abs(np.cos(theta))], atol=1e-14)


def test_fusion_to_frame_examples():
    f = fusion_to_frame(lines_at(np.pi / 3))
    np.testing.assert_allclose(f, [[1, 0.5], [0, np.sqrt(3) / 2]], atol=1e-15)
    ff = FusionFrame((np.array([[0.0], [1.0]]),), (0.5,), 2)
    np.testing.assert_allclose(fusion_to_frame(ff), [[0.0], [0.5]])


@pytest.mark.parametrize("seed", range(10))
def test_fusion_operator_is_frame_operator(seed):
    rng = np.random.default_rng(seed)
    ff = random_fusion_frame(rng, 6, [2, 3, 1], "complex")
    assert np.max(np.abs(fusion_operator(ff) - frame_operator(fusion_to_frame(ff)))) <= 1e-10


def test_invalid_blocks():
    with pytest.raises(InvalidInput):
        FusionFrame((np.array([[1.0], [1.0]]),), (1.0,), 2)
    with pytest.raises(InvalidInput):
        FusionFrame((np.eye(2),), (0.0,), 2)


def test_parseval_lines_have_empty_complement():
    fc = fusion_naimark(lines_at(np.pi / 2))
    assert len(fc.frame) == 0 and fc.dropped == (0, 1)


def test_lines_at_60_degrees():
    fc = fusion_naimark(lines_at(np.pi / 3))
    assert fc.B == pytest.approx(1.5)
    np.testing.assert_allclose(fc.frame.weights, [np.sqrt(0.5)] * 2)
    assert fc.frame.dims == (1, 1)
    pa = principal_angles(*fc.frame.bases)
    assert pa.cosines[0] == pytest.approx(1.0, abs=1e-12)
    pred = predicted_complement_angles(principal_angles(*lines_at(np.pi / 3).bases), 1, 1, 1.5)
    assert pred.cosines[0] == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(10))
def test_complement_block_norms(seed):
    rng = np.random.default_rng(seed)
    ff = random_fusion_frame(rng, 5, [2, 2, 3], "real")
    fc = fusion_naimark(ff)
    g = fc.naimark.G
    start = 0
    for q, w in zip(ff.bases, ff.weights):
        gk = g[:, start:start + q.shape[1]]
        start += q.shape[1]
        gram = gk.conj().T @ gk
        assert np.max(np.abs(gram - (fc.B - w**2) * np.eye(q.shape[1]))) <= 1e-9 * fc.B


def test_principal_angle_examples():
    q = random_isometry(np.random.default_rng(1), 5, 2)
    np.testing.assert_allclose(principal_angles(q, q).angles, 0, atol=1e-7)
    e = np.eye(2)
    assert principal_angles(e[:, :1], e[:, 1:]).angles[0] == pytest.approx(np.pi / 2)
    assert principal_angles(*lines_at(np.pi / 3).bases).angles[0] == pytest.approx(np.pi / 3, abs=1e-12)
    with pytest.raises(InvalidInput):
        principal_angles(np.eye(3)[:, :1], np.eye(2)[:, :1])


@pytest.mark.parametrize("seed", range(10))
def test_principal_angles_match_oracle(seed):
    rng = np.random.default_rng(seed)
    q1 = random_isometry(rng, 7, 2, "complex")
    q2 = random_isometry(rng, 7, 3, "complex")
    pa = principal_angles(q1, q2)
    np.testing.assert_allclose(pa.cosines**2, cos_sq_oracle(q1, q2), atol=1e-12)
    np.testing.assert_allclose(np.cos(pa.angles), pa.cosines, atol=1e-12)


def test_predicted_angle_examples():
    theta = principal_angles(np.eye(4)[:, :2], np.eye(4)[:, 2:])
    assert np.allclose(predicted_complement_angles(theta, 1, 1, 3).angles, np.pi / 2)
    theta = principal_angles(*lines_at(0.7).bases)
    same = predicted_complement_angles(theta, 1.0, 1.0, 2.0)
    assert same.angles[0] == pytest.approx(0.7)
    with pytest.raises(InvalidInput):
        predicted_complement_angles(theta, 2.0, 1.0, 3.0)


def test_chordal_examples():
    q = random_isometry(np.random.default_rng(2), 6, 3)
    assert chordal_distance(q, q) == pytest.approx(0, abs=1e-7)
    e = np.eye(6)
    assert chordal_distance(e[:, :3], e[:, 3:]) == pytest.approx(np.sqrt(3), abs=1e-12)
    a, t = chordal_distance_squared(*lines_at(np.pi / 3).bases)
    assert a == pytest.approx(0.75, abs=1e-12) and t == pytest.approx(0.75, abs=1e-12)
    with pytest.raises(InvalidInput):
        chordal_distance(e[:, :1], e[:, 1:3])


@pytest.mark.parametrize("seed", range(10))
def test_chordal_two_evaluations_agree(seed):
    rng = np.random.default_rng(seed)
    a, t = chordal_distance_squared(random_isometry(rng, 6, 2, "complex"), random_isometry(rng, 6, 2, "complex"))
    assert abs(a - t) <= 1e-10


def test_chordal_check_lines():
    rep = chordal_complement_check(lines_at(np.pi / 3), 0, 1)
    assert rep.r == pytest.approx(4.0)
    assert rep.predicted == pytest.approx(0.0, abs=1e-12) and rep.passed


def test_chordal_check_duplicated_block_half_bound():
    # two copies of one line with nu^2 = B/2, so r = 1
    e = np.eye(2)
    ff = FusionFrame((e[:, :1], e[:, :1], e[:, 1:]), (1.0, 1.0, np.sqrt(2)), 2)
    fc = fusion_naimark(ff)
    assert fc.B == pytest.approx(2.0) and fc.dropped == (2,)
    rep = chordal_complement_check(ff, 0, 1, complement=fc)
    assert rep.r == pytest.approx(1.0)
    assert rep.measured == pytest.approx(0, abs=1e-12) and rep.predicted == pytest.approx(0, abs=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_chordal_check_random(seed):
    rng = np.random.default_rng(seed)
    ff = random_fusion_frame(rng, 6, [2, 2, 2, 2], "complex")
    rep = chordal_complement_check(ff, 1, 3)
    assert rep.residual <= 1e-8


def test_chordal_check_unequal_dims():
    ff = random_fusion_frame(np.random.default_rng(0), 4, [1, 2])
    with pytest.raises(InvalidInput):
        chordal_complement_check(ff, 0, 1)


@pytest.mark.parametrize("seed", range(10))
def test_pairwise_angles_unitarily_invariant(seed):
    rng = np.random.default_rng(seed)
    ff = random_fusion_frame(rng, 6, [1, 2, 3], "complex")
    u = random_unitary(rng, 6, "complex")
    moved = FusionFrame(tuple(u @ q for q in ff.bases), ff.weights, 6)
    a, b = pairwise_cosines(ff), pairwise_cosines(moved)
    for key in a:
        assert np.max(np.abs(a[key] - b[key])) <= 1e-10


def _rebased(ff, rng, field):
    us = [random_unitary(rng, d, field) for d in ff.dims]
    return FusionFrame(tuple(q @ u for q, u in zip(ff.bases, us)), ff.weights, ff.ambient_dim), us


@pytest.mark.parametrize("seed", range(10))
def test_fusion_equivalence_different_bases(seed):
    rng = np.random.default_rng(seed)
    ff = random_fusion_frame(rng, 5, [2, 1, 2, 3], "complex")
    ff2, us = _rebased(ff, rng, "complex")
    a, b = fusion_naimark(ff).frame, fusion_naimark(ff2).frame
    hinted = fusion_unitary_equivalence(a, b, block_unitaries_hint=us)
    assert hinted.equivalent and hinted.residual <= 1e-8
    blind = fusion_unitary_equivalence(a, b)
    assert blind.equivalent and blind.residual <= 1e-8


def test_fusion_equivalence_identical():
    a = fusion_naimark(random_fusion_frame(np.random.default_rng(3), 4, [2, 2, 1])).frame
    res = fusion_unitary_equivalence(a, a)
    assert res.equivalent
    np.testing.assert_allclose(res.unitary, np.eye(a.ambient_dim), atol=1e-8)


def test_fusion_equivalence_detects_replaced_block():
    rng = np.random.default_rng(4)
    a = fusion_naimark(random_fusion_frame(rng, 5, [1, 1, 1, 1, 1, 1])).frame
    bases = list(a.bases)
    bases[2] = random_isometry(rng, a.ambient_dim, 1)
    b = FusionFrame(tuple(bases), a.weights, a.ambient_dim)
    assert any(np.max(np.abs(pairwise_cosines(a)[k] - pairwise_cosines(b)[k])) > 1e-3 for k in pairwise_cosines(a))
    assert not fusion_unitary_equivalence(a, b).equivalent


def test_fusion_equivalence_structure_mismatch():
    a = random_fusion_frame(np.random.default_rng(5), 4, [1, 2])
    b = random_fusion_frame(np.random.default_rng(6), 4, [2, 1])
    with pytest.raises(InvalidInput):
        fusion_unitary_equivalence(a, b)
