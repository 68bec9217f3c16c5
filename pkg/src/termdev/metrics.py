"""Evaluation metrics: cut-shape circularity and tracker angular deviation.

Orientations are unit quaternions in ``(w, x, y, z)`` order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from shapely.geometry import LinearRing

from .errors import DegeneratePolygon, EmptyInput, InvalidOrientation

UNIT_TOLERANCE = 1e-6
TRACKER_ROLES = ("chest", "upper_arm", "lower_arm")


@dataclass(frozen=True)
class Polygon:
    """Closed contour, vertices in mm, last vertex joined to the first."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise DegeneratePolygon("vertices must be a sequence of (x, y) pairs")
        if v.shape[0] < 3:
            raise DegeneratePolygon(f"polygon needs at least 3 vertices, got {v.shape[0]}")
        if not np.all(np.isfinite(v)):
            raise DegeneratePolygon("vertices must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        if _shoelace(v) == 0.0:
            raise DegeneratePolygon("polygon has zero area")
        if not LinearRing(v).is_simple:
            raise DegeneratePolygon("polygon is self-intersecting")


def _shoelace(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    # centre first so large offsets do not swamp the cross products
    x = x - x.mean()
    y = y - y.mean()
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))


def polygon_area(p: Polygon) -> float:
    return _shoelace(p.vertices)


def polygon_perimeter(p: Polygon) -> float:
    v = p.vertices
    return float(np.sum(np.hypot(*(np.roll(v, -1, axis=0) - v).T)))


def circularity(p: Polygon) -> float:
    """``4*pi*area / perimeter**2``; 1 for a circle, smaller for anything else."""
    return 4.0 * math.pi * polygon_area(p) / polygon_perimeter(p) ** 2


def relative_circularity(cut: Polygon, template: Polygon) -> float:
    """Circularity of a cut shape normalised by an imaged template circle."""
    return circularity(cut) / circularity(template)


# -- orientations -------------------------------------------------------------

def _unit_quat(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.shape != (4,) or not np.all(np.isfinite(q)):
        raise InvalidOrientation(f"expected a finite 4-vector quaternion, got {q!r}")
    if abs(np.linalg.norm(q) - 1.0) > UNIT_TOLERANCE:
        raise InvalidOrientation(f"quaternion norm {np.linalg.norm(q)} is not 1")
    return q


def quat_multiply(a, b) -> np.ndarray:
    """Hamilton product ``a * b`` (rotation ``b`` first, then ``a``)."""
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return np.array([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ])


def quat_conjugate(q) -> np.ndarray:
    return np.array([q[0], -q[1], -q[2], -q[3]], dtype=float)


def quat_to_matrix(q) -> np.ndarray:
    w, x, y, z = q
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def relative_rotation(r0, rt) -> np.ndarray:
    """Rotation taking orientation ``r0`` to ``rt``, i.e. ``R_t R_0^T``."""
    return quat_multiply(_unit_quat(rt), quat_conjugate(_unit_quat(r0)))


def rotation_angle(r) -> float:
    """Geodesic angle of a rotation, in [0, pi], from the trace of its matrix.

    ``r`` may be a unit quaternion or a 3x3 rotation matrix. Matrices go
    through ``arccos((trace - 1) / 2)``; quaternions use the equivalent
    ``2 * atan2(|v|, |w|)``, which keeps full precision near the identity
    where arccos loses about 1e-8 rad.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        q = _unit_quat(r)
        return 2.0 * math.atan2(float(np.linalg.norm(q[1:])), abs(float(q[0])))
    c = (np.trace(r) - 1.0) / 2.0
    if not (-1.0 - UNIT_TOLERANCE <= c <= 1.0 + UNIT_TOLERANCE):
        raise InvalidOrientation(f"rotation trace gives cos(angle) = {c}")
    return abs(math.acos(min(1.0, max(-1.0, c))))


@dataclass(frozen=True)
class PoseTrace:
    """Orientation samples of one body-mounted tracker."""

    t: np.ndarray
    quats: np.ndarray
    tracker_role: str = "chest"
    sample_rate: float = 100.0

    def __post_init__(self):
        t = np.array(self.t, dtype=float)
        q = np.array(self.quats, dtype=float).reshape(-1, 4)
        if t.shape[0] != q.shape[0]:
            raise ValueError("need one timestamp per orientation sample")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("timestamps must be strictly increasing")
        norms = np.linalg.norm(q, axis=1)
        if q.size and np.any(np.abs(norms - 1.0) > UNIT_TOLERANCE):
            bad = int(np.argmax(np.abs(norms - 1.0)))
            raise InvalidOrientation(f"sample {bad} has quaternion norm {norms[bad]}")
        t.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "quats", q)

    def __len__(self):
        return self.t.shape[0]


def angular_deviation(trace: PoseTrace) -> np.ndarray:
    """Per-sample rotation angle away from the first sample's orientation."""
    if len(trace) == 0:
        raise EmptyInput("pose trace has no samples")
    r0 = trace.quats[0]
    return np.array([rotation_angle(relative_rotation(r0, rt)) for rt in trace.quats])


def mean_abs_angular_deviation(trace: PoseTrace) -> float:
    """Mean over all recorded samples of the deviation from the initial pose."""
    return float(np.mean(angular_deviation(trace)))
