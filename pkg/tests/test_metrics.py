import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from oracles import axis_angle_quat, regular_polygon
from termdev.errors import DegeneratePolygon, EmptyInput, InvalidOrientation
from termdev.metrics import (Polygon, PoseTrace, angular_deviation, circularity,
                             mean_abs_angular_deviation, polygon_area, polygon_perimeter,
                             quat_to_matrix, relative_circularity, relative_rotation, rotation_angle)

SQUARE = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
IDENTITY = np.array([1.0, 0.0, 0.0, 0.0])


def random_quats(rng, n):
    # scipy stores (x, y, z, w)
    xyzw = Rotation.random(n, random_state=rng).as_quat()
    return np.column_stack([xyzw[:, 3], xyzw[:, :3]])


def to_scipy(q):
    return Rotation.from_quat([q[1], q[2], q[3], q[0]])


# -- polygons ---------------------------------------------------------------------

def test_unit_square():
    assert polygon_area(SQUARE) == 1.0
    assert polygon_perimeter(SQUARE) == 4.0


def test_vertex_order_reversal():
    rev = Polygon(SQUARE.vertices[::-1])
    assert polygon_area(rev) == polygon_area(SQUARE)


def test_3600gon_area():
    n, r = 3600, 50.0
    p = Polygon(regular_polygon(n, r))
    analytic_ngon = 0.5 * n * r * r * math.sin(2 * math.pi / n)
    assert polygon_area(p) == pytest.approx(analytic_ngon, rel=1e-10)
    assert polygon_area(p) == pytest.approx(math.pi * r * r, rel=1e-4)


def test_perimeter_regular():
    n, r = 12, 3.0
    p = Polygon(regular_polygon(n, r))
    assert polygon_perimeter(p) == pytest.approx(2 * n * r * math.sin(math.pi / n), rel=1e-12)


@pytest.mark.parametrize("verts", [
    [(0, 0), (1, 0)],
    [(0, 0), (1, 0), (2, 0)],
    [(0, 0), (1, 1), (1, 0), (0, 1)],  # bow-tie
    [(0, 0), (1, 0), (float("nan"), 1)],
])
def test_degenerate_polygons(verts):
    with pytest.raises(DegeneratePolygon):
        Polygon(verts)


def test_circularity_examples():
    assert circularity(SQUARE) == pytest.approx(math.pi / 4, rel=1e-12)
    hexagon = Polygon(regular_polygon(6, 2.0))
    assert circularity(hexagon) == pytest.approx((math.pi / 6) / math.tan(math.pi / 6), rel=1e-12)
    assert circularity(hexagon) == pytest.approx(0.9069, abs=1e-4)
    assert circularity(Polygon(regular_polygon(3600, 50.0))) == pytest.approx(1.0, abs=1e-5)


def test_relative_circularity():
    circle = Polygon(regular_polygon(3600, 50.0))
    assert relative_circularity(circle, circle) == 1.0
    ratio = (math.pi / 4) / ((math.pi / 3600) / math.tan(math.pi / 3600))
    assert relative_circularity(SQUARE, circle) == pytest.approx(ratio, rel=1e-9)
    assert relative_circularity(SQUARE, circle) == pytest.approx(0.785, abs=1e-3)
    big = Polygon(SQUARE.vertices * 3)
    assert relative_circularity(big, circle) == pytest.approx(relative_circularity(SQUARE, circle), rel=1e-12)


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1))
def test_circularity_rigid_and_scale_invariant(seed):
    rng = np.random.default_rng(seed)
    pts = regular_polygon(7, 1.0) * rng.uniform(0.5, 1.5, size=(7, 1))
    p = Polygon(pts)
    a = rng.uniform(0, 2 * np.pi)
    R = np.array([[np.cos(a), -np.sin(a)], [np.sin(a), np.cos(a)]])
    moved = Polygon(rng.uniform(0.1, 20) * pts @ R.T + rng.uniform(-100, 100, size=2))
    assert circularity(moved) == pytest.approx(circularity(p), rel=1e-9)


# -- orientations ---------------------------------------------------------------------

def test_relative_rotation_identity_cases():
    rng = np.random.default_rng(0)
    q = random_quats(rng, 1)[0]
    rel = relative_rotation(q, q)
    assert rotation_angle(rel) == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(np.abs(relative_rotation(IDENTITY, q)), np.abs(q), atol=1e-15)


def test_relative_rotation_recovers_target():
    rng = np.random.default_rng(1)
    for q0, qt in random_quats(rng, 50).reshape(25, 2, 4):
        rel = relative_rotation(q0, qt)
        # R_rel R_0 == R_t
        np.testing.assert_allclose(quat_to_matrix(rel) @ quat_to_matrix(q0), quat_to_matrix(qt), atol=1e-9)
        expected = to_scipy(qt) * to_scipy(q0).inv()
        np.testing.assert_allclose(quat_to_matrix(rel), expected.as_matrix(), atol=1e-12)


def test_relative_rotation_rejects_non_unit():
    with pytest.raises(InvalidOrientation):
        relative_rotation([1.0, 0.1, 0.0, 0.0], IDENTITY)


def test_rotation_angle_examples():
    assert rotation_angle(IDENTITY) == 0.0
    assert rotation_angle(np.eye(3)) == 0.0
    for axis in ([1, 0, 0], [0, 1, 0], [1, 2, 3]):
        q = axis_angle_quat(axis, math.pi / 2)
        assert rotation_angle(q) == pytest.approx(math.pi / 2, abs=1e-12)
        assert rotation_angle(quat_to_matrix(q)) == pytest.approx(math.pi / 2, abs=1e-12)


def test_rotation_angle_half_turn_clamp_path():
    R = np.diag([1.0, -1.0, -1.0])
    assert rotation_angle(R) == pytest.approx(math.pi)
    # trace nudged past -1 by round-off must clamp, not raise
    R_bad = R.copy()
    R_bad[0, 0] -= 2e-12
    assert (np.trace(R_bad) - 1) / 2 < -1
    assert rotation_angle(R_bad) == math.pi
    assert rotation_angle(axis_angle_quat([0, 0, 1], math.pi)) == pytest.approx(math.pi)


def test_rotation_angle_rejects_corrupt_matrix():
    with pytest.raises(InvalidOrientation):
        rotation_angle(np.diag([1.0, -1.0, -1.1]))


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_angle_paths_agree_and_match_scipy(seed):
    q = random_quats(np.random.default_rng(seed), 1)[0]
    via_quat = rotation_angle(q)
    via_matrix = rotation_angle(quat_to_matrix(q))
    assert 0.0 <= via_quat <= math.pi
    assert via_quat == pytest.approx(to_scipy(q).magnitude(), abs=1e-9)
    assert via_matrix == pytest.approx(via_quat, abs=1e-7)


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_angle_symmetric(seed):
    a, b = random_quats(np.random.default_rng(seed), 2)
    assert rotation_angle(relative_rotation(a, b)) == pytest.approx(
        rotation_angle(relative_rotation(b, a)), abs=1e-12)


def trace_from(quats, role="chest"):
    return PoseTrace(t=np.arange(len(quats)) / 100.0, quats=quats, tracker_role=role)


def test_mean_deviation_constant():
    q = axis_angle_quat([0, 1, 1], 0.4)
    assert mean_abs_angular_deviation(trace_from([q] * 20)) == pytest.approx(0.0, abs=1e-12)


def test_mean_deviation_half_at_right_angle():
    q90 = axis_angle_quat([0, 0, 1], math.pi / 2)
    quats = [IDENTITY] * 10 + [q90] * 10
    assert mean_abs_angular_deviation(trace_from(quats)) == pytest.approx(math.pi / 4, abs=1e-12)
    dev = angular_deviation(trace_from(quats))
    assert dev[0] == 0.0


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_mean_deviation_mounting_offset_invariance(seed):
    rng = np.random.default_rng(seed)
    quats = random_quats(rng, 30)
    S = random_quats(rng, 1)[0]
    offset = [(to_scipy(q) * to_scipy(S)).as_quat() for q in quats]
    offset = np.array([[x[3], x[0], x[1], x[2]] for x in offset])
    assert mean_abs_angular_deviation(trace_from(offset)) == pytest.approx(
        mean_abs_angular_deviation(trace_from(quats)), abs=1e-9)


def test_pose_trace_validation():
    with pytest.raises(EmptyInput):
        mean_abs_angular_deviation(PoseTrace(t=[], quats=np.zeros((0, 4))))
    with pytest.raises(ValueError):
        PoseTrace(t=[0.0, 0.0], quats=[IDENTITY, IDENTITY])
    with pytest.raises(InvalidOrientation):
        PoseTrace(t=[0.0], quats=[[1.0, 0.01, 0, 0]])
