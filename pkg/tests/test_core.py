"""Group, metric, frame, connection and isometry checks."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sol3 import (
    AXIS_SWAP_FLIP,
    BasePointMismatch,
    FrameVector,
    IsometryDescriptor,
    IsometryFamily,
    SolPoint,
    TangentVector,
    connection_coeff,
    frame_at,
    group_mul,
    inverse,
    isometry_apply,
    isometry_compose,
    isometry_differential,
    isometry_push,
    left_translate,
    metric_eval,
    ricci_frame_origin,
    vertical_translation,
)

coord = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


def rand_point(rng) -> SolPoint:
    return SolPoint(*(rng.uniform(-2.0, 2.0, size=3)))


def rand_iso(rng) -> IsometryDescriptor:
    family = IsometryFamily.TRANSLATION if rng.uniform() < 0.5 else IsometryFamily.FLIP
    sx, sy = rng.choice([-1, 1]), rng.choice([-1, 1])
    a, b, c = rng.uniform(-1.5, 1.5, size=3)
    return IsometryDescriptor(family, int(sx), int(sy), float(a), float(b), float(c))


def test_identity_element():
    p = SolPoint(3.0, -2.0, 5.0)
    assert group_mul(SolPoint(0, 0, 0), p) == p
    assert group_mul(p, SolPoint(0, 0, 0)) == p


def test_mul_examples():
    assert group_mul(SolPoint(1, 0, 0), SolPoint(0, 1, 0)) == SolPoint(1, 1, 0)
    t, p = 0.7, SolPoint(1.2, -0.4, 0.9)
    q = group_mul(SolPoint(0, 0, t), p)
    assert q.x == pytest.approx(math.exp(-t) * p.x, rel=1e-15)
    assert q.y == pytest.approx(math.exp(t) * p.y, rel=1e-15)
    assert q.z == t + p.z


@given(coord, coord, coord, coord, coord, coord, coord, coord, coord)
@settings(derandomize=True, max_examples=100)
def test_associativity(ax, ay, az, bx, by, bz, cx, cy, cz):
    a, b, c = SolPoint(ax, ay, az), SolPoint(bx, by, bz), SolPoint(cx, cy, cz)
    left = group_mul(group_mul(a, b), c)
    right = group_mul(a, group_mul(b, c))
    for u, v in zip(left, right):
        assert u == pytest.approx(v, rel=1e-12, abs=1e-12)


def test_inverse_random():
    rng = np.random.default_rng(3)
    for _ in range(200):
        p = rand_point(rng)
        q = group_mul(p, inverse(p))
        assert max(abs(q.x), abs(q.y), abs(q.z)) < 1e-12


def test_left_translate_matches_group_mul():
    rng = np.random.default_rng(4)
    for _ in range(50):
        p, t = rand_point(rng), rng.uniform(-2, 2)
        assert left_translate(t, p) == group_mul(SolPoint(0, 0, t), p)


def test_left_translate_one_parameter_group():
    rng = np.random.default_rng(5)
    for _ in range(50):
        p = rand_point(rng)
        s, t = rng.uniform(-1.5, 1.5, size=2)
        a = left_translate(s, left_translate(t, p))
        b = left_translate(s + t, p)
        assert abs(a.x - b.x) < 1e-12 and abs(a.y - b.y) < 1e-12 and abs(a.z - b.z) < 1e-12


def test_left_translate_example():
    q = left_translate(1.0, SolPoint(1, 1, 0))
    assert q.x == pytest.approx(math.exp(-1), rel=1e-15)
    assert q.y == pytest.approx(math.e, rel=1e-15)
    assert q.z == 1.0


def test_metric_examples():
    o = SolPoint(0, 0, 0)
    assert metric_eval(TangentVector(o, 1, 0, 0), TangentVector(o, 1, 0, 0)) == 1.0
    p = SolPoint(0, 0, 1)
    assert metric_eval(TangentVector(p, 1, 0, 0), TangentVector(p, 1, 0, 0)) == \
        pytest.approx(math.e ** 2, rel=1e-15)


def test_metric_base_mismatch():
    u = TangentVector(SolPoint(0, 0, 0), 1, 0, 0)
    v = TangentVector(SolPoint(0, 0, 1), 1, 0, 0)
    with pytest.raises(BasePointMismatch):
        metric_eval(u, v)


def test_frame_orthonormal():
    rng = np.random.default_rng(6)
    for _ in range(50):
        p = rand_point(rng)
        frame = frame_at(p)
        for i in range(3):
            for j in range(3):
                expected = 1.0 if i == j else 0.0
                assert metric_eval(frame[i], frame[j]) == pytest.approx(expected, abs=1e-14)


def test_frame_components():
    e1, e2, e3 = frame_at(SolPoint(5, 7, 1))
    assert (e1.vx, e1.vy, e1.vz) == (pytest.approx(math.exp(-1)), 0.0, 0.0)
    assert (e2.vx, e2.vy, e2.vz) == (0.0, pytest.approx(math.e), 0.0)
    assert (e3.vx, e3.vy, e3.vz) == (0.0, 0.0, 1.0)


def test_metric_left_invariance():
    # dL_q = diag(e^{-q.z}, e^{q.z}, 1) must preserve the metric pairing.
    rng = np.random.default_rng(7)
    for _ in range(200):
        p, q = rand_point(rng), rand_point(rng)
        u = TangentVector(p, *rng.uniform(-1, 1, size=3))
        v = TangentVector(p, *rng.uniform(-1, 1, size=3))
        qp = group_mul(q, p)
        scale = (math.exp(-q.z), math.exp(q.z), 1.0)
        du = TangentVector(qp, scale[0] * u.vx, scale[1] * u.vy, scale[2] * u.vz)
        dv = TangentVector(qp, scale[0] * v.vx, scale[1] * v.vy, scale[2] * v.vz)
        assert metric_eval(du, dv) == pytest.approx(metric_eval(u, v), rel=1e-12, abs=1e-12)


def test_connection_table():
    assert connection_coeff(1, 1) == FrameVector(0, 0, -1)
    assert connection_coeff(2, 2) == FrameVector(0, 0, 1)
    assert connection_coeff(1, 2) == FrameVector(0, 0, 0)
    assert connection_coeff(1, 3) == FrameVector(1, 0, 0)
    assert connection_coeff(2, 3) == FrameVector(0, -1, 0)
    for j in range(1, 4):
        assert connection_coeff(3, j) == FrameVector(0, 0, 0)


def test_connection_index_error():
    with pytest.raises(ValueError):
        connection_coeff(0, 1)
    with pytest.raises(ValueError):
        connection_coeff(1, 4)


def test_connection_metric_compatible():
    # Frame inner products are constant, so <D_i Ej, Ek> + <Ej, D_i Ek> = 0.
    basis = [FrameVector(1, 0, 0), FrameVector(0, 1, 0), FrameVector(0, 0, 1)]
    for i in range(1, 4):
        for j in range(1, 4):
            for k in range(1, 4):
                lhs = connection_coeff(i, j).dot(basis[k - 1]) \
                    + basis[j - 1].dot(connection_coeff(i, k))
                assert lhs == 0.0


def test_flip_example():
    assert isometry_apply(AXIS_SWAP_FLIP, SolPoint(1, 2, 3)) == SolPoint(2, 1, -3)


def test_translation_identity():
    rng = np.random.default_rng(8)
    ident = IsometryDescriptor(IsometryFamily.TRANSLATION)
    for _ in range(20):
        p = rand_point(rng)
        assert isometry_apply(ident, p) == p


def test_vertical_flip_conjugation():
    # L_t o phi = phi o L_{-t}, both as descriptors and pointwise.
    rng = np.random.default_rng(9)
    for _ in range(50):
        t = rng.uniform(-2, 2)
        lhs = isometry_compose(vertical_translation(t), AXIS_SWAP_FLIP)
        rhs = isometry_compose(AXIS_SWAP_FLIP, vertical_translation(-t))
        assert lhs.family is rhs.family
        assert (lhs.sx, lhs.sy) == (rhs.sx, rhs.sy)
        assert lhs.a == rhs.a and lhs.b == rhs.b
        assert lhs.c == pytest.approx(rhs.c, abs=1e-15)
        p = rand_point(rng)
        a = left_translate(t, isometry_apply(AXIS_SWAP_FLIP, p))
        b = isometry_apply(AXIS_SWAP_FLIP, left_translate(-t, p))
        assert abs(a.x - b.x) < 1e-13 and abs(a.y - b.y) < 1e-13 and abs(a.z - b.z) < 1e-13


def test_compose_matches_apply():
    rng = np.random.default_rng(10)
    for _ in range(200):
        outer, inner = rand_iso(rng), rand_iso(rng)
        p = rand_point(rng)
        via_descriptor = isometry_apply(isometry_compose(outer, inner), p)
        direct = isometry_apply(outer, isometry_apply(inner, p))
        assert abs(via_descriptor.x - direct.x) < 1e-12
        assert abs(via_descriptor.y - direct.y) < 1e-12
        assert abs(via_descriptor.z - direct.z) < 1e-12


def test_isometries_preserve_metric():
    rng = np.random.default_rng(11)
    for _ in range(200):
        iso = rand_iso(rng)
        p = rand_point(rng)
        u = TangentVector(p, *rng.uniform(-1, 1, size=3))
        v = TangentVector(p, *rng.uniform(-1, 1, size=3))
        assert metric_eval(isometry_push(iso, u), isometry_push(iso, v)) == \
            pytest.approx(metric_eval(u, v), rel=1e-12, abs=1e-12)


def test_differential_matches_finite_differences():
    # Analytic Jacobian against central differences with step 1e-6.
    rng = np.random.default_rng(12)
    h = 1e-6
    for _ in range(50):
        iso = rand_iso(rng)
        p = rand_point(rng)
        jac = np.array(isometry_differential(iso))
        for k, delta in enumerate(np.eye(3)):
            plus = isometry_apply(iso, SolPoint(*(np.array(list(p)) + h * delta)))
            minus = isometry_apply(iso, SolPoint(*(np.array(list(p)) - h * delta)))
            fd = (np.array(list(plus)) - np.array(list(minus))) / (2 * h)
            assert np.max(np.abs(fd - jac[:, k])) < 1e-6


def test_ricci_frame_origin():
    v1, v2, v3 = ricci_frame_origin()
    inv_sqrt2 = 1 / math.sqrt(2)
    assert (v1.a1, v1.a2, v1.a3) == (pytest.approx(inv_sqrt2), pytest.approx(inv_sqrt2), 0.0)
    assert (v2.a1, v2.a2, v2.a3) == (pytest.approx(inv_sqrt2), pytest.approx(-inv_sqrt2), 0.0)
    assert (v3.a1, v3.a2, v3.a3) == (0.0, 0.0, 1.0)
    for v in (v1, v2, v3):
        assert v.norm() == pytest.approx(1.0, rel=1e-15)
    assert v1.dot(v2) == pytest.approx(0.0, abs=1e-15)
