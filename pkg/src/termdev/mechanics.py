"""Analytic mechanics of the four terminal devices.

Everything is SI: metres, radians, newtons, pascals, joules. Geometry
defaults are the as-built dimensions of the devices; the elastic cord
properties (``K``, ``L0``) and the striker inertia are not known from the
hardware and must be supplied for anything energy-related.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateVolume, InvalidConfig, InvalidInertia, LinkageInfeasible, OutOfStroke

STANDARD_ATMOSPHERE = 101325.0

# slack for float round-off at the stroke / linkage boundaries
_EPS = 1e-12


@dataclass(frozen=True)
class FlickerGeometry:
    """Striker, pin line and elastic cord of the flicking device."""

    L_s: float = 0.125
    d_h: float = 0.0538
    theta_min: float = math.radians(-5.0)
    theta_max: float = math.radians(30.0)
    d_eb: float = 0.0624
    theta_eb: float = math.radians(-11.7)
    d_es: float = 0.085
    K: float = 100.0
    L0: float = 0.0
    ratchet_levels: int = 5

    def __post_init__(self):
        if not self.d_h > 0:
            raise InvalidConfig("d_h must be positive")
        if not self.theta_min < self.theta_max:
            raise InvalidConfig("theta_min must be below theta_max")
        if not (-math.pi / 2 < self.theta_min and self.theta_max < math.pi / 2):
            raise InvalidConfig("draw angles must lie strictly inside (-90, 90) degrees")
        if not (self.d_es > 0 and self.d_eb > 0 and self.K > 0):
            raise InvalidConfig("d_es, d_eb and K must be positive")
        if not self.L0 >= 0:
            raise InvalidConfig("L0 must be non-negative")
        if int(self.ratchet_levels) != self.ratchet_levels or self.ratchet_levels < 1:
            raise InvalidConfig("ratchet_levels must be a positive integer")

    @property
    def x0(self) -> float:
        return self.d_h * math.tan(self.theta_min)

    @property
    def stroke(self) -> float:
        """Pin displacement at full draw."""
        return pin_displacement(self.theta_max, self)


@dataclass(frozen=True)
class SuctionGeometry:
    D_v: float = 0.021
    D_p: float = 0.027
    q_max: float = 0.025
    q_rest: float = 0.005
    P0: float = STANDARD_ATMOSPHERE

    def __post_init__(self):
        if not 0 < self.q_rest < self.q_max:
            raise InvalidConfig("need 0 < q_rest < q_max")
        if not (self.D_v > 0 and self.D_p > 0):
            raise InvalidConfig("diameters must be positive")
        if not self.P0 > 0:
            raise InvalidConfig("P0 must be positive")

    @property
    def plunger_area(self) -> float:
        return math.pi * self.D_p ** 2 / 4.0


@dataclass(frozen=True)
class FourBarGeometry:
    """Crank-rocker linkage: crank l1, coupler l2, rocker l3, ground l4."""

    l1: float = 0.003
    l2: float = 0.032
    l3: float = 0.0075
    l4: float = 0.0355

    def __post_init__(self):
        if min(self.l1, self.l2, self.l3, self.l4) <= 0:
            raise InvalidConfig("link lengths must be positive")
        if not grashof_check(self):
            raise InvalidConfig("links do not form a Grashof crank-rocker with l1 as crank")


@dataclass(frozen=True)
class GearPair:
    r_in: float = 0.00625
    r_out: float = 0.015

    def __post_init__(self):
        if not (self.r_in > 0 and self.r_out > 0):
            raise InvalidConfig("pitch radii must be positive")

    @property
    def ratio(self) -> float:
        return self.r_out / self.r_in


# -- flicker ---------------------------------------------------------------

def pin_displacement(theta_d: float, g: FlickerGeometry) -> float:
    """Inverse of :func:`draw_angle`."""
    return g.d_h * math.tan(theta_d) - g.x0


def draw_angle(x: float, g: FlickerGeometry) -> float:
    """Striker angle for a pin drawn ``x`` metres from rest."""
    if not -_EPS <= x <= g.stroke + _EPS:
        raise OutOfStroke(f"pin displacement {x} outside [0, {g.stroke}]")
    return math.atan2(x + g.x0, g.d_h)


def elastic_length(theta_d: float, g: FlickerGeometry) -> float:
    """Cord length by the cosine rule between its two anchor points."""
    return math.sqrt(g.d_es ** 2 + g.d_eb ** 2
                     - 2.0 * g.d_es * g.d_eb * math.cos(theta_d - g.theta_eb))


def cord_force(theta_d: float, g: FlickerGeometry) -> float:
    """Cord tension; zero while the cord is slack."""
    return max(0.0, g.K * (elastic_length(theta_d, g) - g.L0))


def striker_torque(theta_d: float, g: FlickerGeometry) -> float:
    L_e = elastic_length(theta_d, g)
    if L_e == 0.0:
        return 0.0
    sin_es = g.d_eb / L_e * math.sin(theta_d - g.theta_eb)
    return cord_force(theta_d, g) * g.d_es * sin_es


def _cord_potential(theta_d: float, g: FlickerGeometry) -> float:
    stretch = max(0.0, elastic_length(theta_d, g) - g.L0)
    return 0.5 * g.K * stretch ** 2


def stored_energy(theta_d: float, g: FlickerGeometry) -> float:
    """Elastic energy stored by drawing the striker from rest to ``theta_d``."""
    return _cord_potential(theta_d, g) - _cord_potential(g.theta_min, g)


def ratchet_positions(g: FlickerGeometry) -> list[float]:
    """Pin displacement of each ratchet tooth, evenly pitched up to full draw."""
    n = int(g.ratchet_levels)
    return [i * g.stroke / n for i in range(1, n + 1)]


def ratchet_latch(x: float, g: FlickerGeometry) -> Optional[int]:
    """0-based index of the highest tooth at or below ``x``; None below the first tooth."""
    teeth = ratchet_positions(g)
    # tolerate round-off when x was computed as a tooth position
    level = None
    for i, tooth in enumerate(teeth):
        if x >= tooth - _EPS * max(1.0, tooth):
            level = i
        else:
            break
    return level


def release_speed(theta_d: float, g: FlickerGeometry, inertia: float) -> float:
    """Striker angular speed if all stored energy becomes kinetic."""
    if not inertia > 0:
        raise InvalidInertia(f"striker inertia must be positive, got {inertia}")
    return math.sqrt(2.0 * max(0.0, stored_energy(theta_d, g)) / inertia)


# -- twister ----------------------------------------------------------------

def gear_output(theta_in: float, gp: GearPair) -> float:
    """Output gear rotation for an input rotation; external mesh reverses sense."""
    return -theta_in * gp.r_in / gp.r_out


def gear_output_torque(tau_in: float, gp: GearPair) -> float:
    """Ideal (lossless) output torque, dual of :func:`gear_output`."""
    return -tau_in * gp.r_out / gp.r_in


# -- suction ----------------------------------------------------------------

def pressure_differential(q: float, g: SuctionGeometry) -> float:
    """Chamber gauge pressure at plunger position ``q``; negative is vacuum.

    Isothermal ideal gas with the volume ratio taken as
    ``q_rest / (q - q_rest)``.
    """
    if q == g.q_rest:
        raise DegenerateVolume("plunger at q_rest gives zero expanded volume")
    if not 0.0 <= q <= g.q_max:
        raise ValueError(f"plunger position {q} outside [0, {g.q_max}]")
    return g.P0 * (g.q_rest / (q - g.q_rest) - 1.0)


def suction_force(q: float, g: SuctionGeometry) -> float:
    """Holding force of the cup, positive when pulling."""
    return -g.plunger_area * pressure_differential(q, g)


# -- cutter -----------------------------------------------------------------

def grashof_check(g: FourBarGeometry) -> bool:
    links = (g.l1, g.l2, g.l3, g.l4)
    s, l = min(links), max(links)
    return s + l <= sum(links) - s - l and g.l1 == s


def _acos_checked(c: float) -> float:
    if c < -1.0 - 1e-9 or c > 1.0 + 1e-9:
        raise LinkageInfeasible(f"cosine {c} outside [-1, 1]")
    return math.acos(min(1.0, max(-1.0, c)))


def rocker_limits(g: FourBarGeometry) -> tuple[float, float, float]:
    """Rocker extremes at the extended and folded crank-coupler positions.

    Returns ``(theta_min, theta_max, range_of_motion)``, angles measured at
    the rocker pivot from the ground line.
    """
    def at(reach):
        return _acos_checked((g.l3 ** 2 + g.l4 ** 2 - reach ** 2) / (2.0 * g.l3 * g.l4))

    theta_max = at(g.l1 + g.l2)
    theta_min = at(g.l1 - g.l2)
    return theta_min, theta_max, theta_max - theta_min


def rocker_angle(crank_angle, g: FourBarGeometry):
    """Rocker angle for a crank angle (scalar or array).

    The crank pivots at the origin, the rocker at ``(l4, 0)``; the crank
    angle is measured from the +x axis toward the rocker side's upper half
    plane. The rocker angle is the angle at the rocker pivot between the
    ground line and the rocker, on the assembly circuit that keeps the
    coupler-rocker joint above the ground line.
    """
    phi = np.asarray(crank_angle, dtype=float)
    ax = g.l1 * np.cos(phi)
    ay = g.l1 * np.sin(phi)
    dx = g.l4 - ax
    d = np.hypot(dx, ay)  # rocker pivot to crank pin
    c = (g.l3 ** 2 + d ** 2 - g.l2 ** 2) / (2.0 * g.l3 * d)
    if np.any(c < -1.0 - 1e-9) or np.any(c > 1.0 + 1e-9):
        raise LinkageInfeasible("no assembly exists at some crank angle")
    beta = np.arccos(np.clip(c, -1.0, 1.0))
    gamma = np.arctan2(ay, dx)
    out = gamma + beta
    return float(out) if out.ndim == 0 else out


def collinear_crank_angles(g: FourBarGeometry) -> tuple[float, float]:
    """Crank angles ``(extended, folded)`` where crank and coupler are collinear.

    These are the two configurations at which the rocker reaches
    ``theta_max`` and ``theta_min`` respectively.
    """
    def pin_direction(reach):
        # angle at the crank pivot of the triangle (reach, l4, l3), joint above ground
        return _acos_checked((g.l4 ** 2 + reach ** 2 - g.l3 ** 2) / (2.0 * g.l4 * reach))

    extended = pin_direction(g.l1 + g.l2)
    folded = pin_direction(g.l2 - g.l1) + math.pi
    return extended, math.remainder(folded, 2.0 * math.pi)
