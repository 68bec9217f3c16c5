"""Fixed-rate two-site EMG control laws.

Each ``*_update`` function is one controller tick: it takes the current
device state and the smoothed activations for that tick and returns the
command for the next tick. Four laws drive the non-humanoid terminal
devices (flick, twist, suction, cut); ``wrist_update`` and
``grasp_update`` are the humanoid-hand baselines.

Every returned :class:`MotorCommand` carries the name of the branch of the
control law that produced it, so simulation logs can show which branches
a trace exercised.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InvalidConfig

POSITION = "position"
TORQUE = "torque"

DEFAULT_THRESHOLD = 0.2


@dataclass(frozen=True)
class ControllerConfig:
    """Control-law parameters, SI units (m, m/s, rad, rad/s, N*m).

    Threshold defaults are artifact choices; nothing here is tuned to a
    particular user.
    """

    dt: float = 1.0 / 200.0
    v_bar: float = 0.010
    q_release: float = 0.040
    s_bar_draw: float = DEFAULT_THRESHOLD
    s_bar_release: float = DEFAULT_THRESHOLD
    s_bar: float = DEFAULT_THRESHOLD
    s_bar_screw: float = DEFAULT_THRESHOLD
    s_bar_unscrew: float = DEFAULT_THRESHOLD
    s_bar_open: float = DEFAULT_THRESHOLD
    s_bar_close: float = DEFAULT_THRESHOLD
    tau_max: float = 1.0
    v_bar_screw: float = 2.0
    q_open: float = 0.0
    q_close: float = 1.0
    q_rest: float = 0.005
    q_max: float = 0.025
    q_min: float = 0.0

    def __post_init__(self):
        if not self.dt > 0:
            raise InvalidConfig(f"dt must be positive, got {self.dt}")
        for name in ("s_bar_draw", "s_bar_release", "s_bar", "s_bar_screw",
                     "s_bar_unscrew", "s_bar_open", "s_bar_close"):
            if not getattr(self, name) > 0:
                raise InvalidConfig(f"{name} must be positive, got {getattr(self, name)}")
        if not self.tau_max > 0:
            raise InvalidConfig(f"tau_max must be positive, got {self.tau_max}")
        if not self.q_min <= self.q_rest < self.q_max:
            raise InvalidConfig(
                f"need q_min <= q_rest < q_max, got {self.q_min}, {self.q_rest}, {self.q_max}")
        if not self.q_release > 0:
            raise InvalidConfig(f"q_release must be positive, got {self.q_release}")


@dataclass(frozen=True)
class MotorCommand:
    kind: str
    value: float
    branch: str
    clamped: bool = False


class GraspState(enum.Enum):
    OPEN = "open"
    CLOSED = "closed"


def _clamp(x: float, lo: float, hi: float) -> tuple[float, bool]:
    if x < lo:
        return lo, True
    if x > hi:
        return hi, True
    return x, False


def flick_update(q: float, s1: float, s2: float, cfg: ControllerConfig) -> MotorCommand:
    """Ratcheted draw / instant release of the flicking striker."""
    if s1 - s2 > cfg.s_bar_draw:
        raw, branch = q + cfg.v_bar * cfg.dt, "draw"
    elif s2 - s1 > cfg.s_bar_release:
        raw, branch = cfg.q_release, "release"
    else:
        raw, branch = q, "hold"
    value, clamped = _clamp(raw, 0.0, cfg.q_release)
    return MotorCommand(POSITION, value, branch, clamped)


def twist_update(s1: float, s2: float, cfg: ControllerConfig) -> MotorCommand:
    """Bang-bang torque with a symmetric dead-band."""
    if s1 - s2 > cfg.s_bar:
        return MotorCommand(TORQUE, cfg.tau_max, "forward")
    if s2 - s1 > cfg.s_bar:
        return MotorCommand(TORQUE, -cfg.tau_max, "reverse")
    return MotorCommand(TORQUE, 0.0, "deadband")


def suction_update(s1: float, s2: float, cfg: ControllerConfig) -> MotorCommand:
    """Plunger target proportional to the differential, centred on ``q_rest``."""
    raw = (0.5 * cfg.q_max - cfg.q_min) * (s1 - s2) + cfg.q_rest
    value, clamped = _clamp(raw, cfg.q_min, cfg.q_max)
    return MotorCommand(POSITION, value, "proportional", clamped)


def cut_update(s1: float, cfg: ControllerConfig) -> MotorCommand:
    if s1 > cfg.s_bar:
        return MotorCommand(TORQUE, cfg.tau_max, "drive")
    return MotorCommand(TORQUE, 0.0, "idle")


def wrist_update(q: float, s1: float, s2: float, cfg: ControllerConfig) -> MotorCommand:
    """Humanoid wrist rotation baseline.

    The unscrew branch snaps the wrist back to 0 rad rather than rotating
    in reverse.
    """
    if s1 - s2 > cfg.s_bar_screw:
        return MotorCommand(POSITION, q + cfg.v_bar_screw * cfg.dt, "screw")
    if s2 - s1 > cfg.s_bar_unscrew:
        return MotorCommand(POSITION, 0.0, "reset")
    return MotorCommand(POSITION, q, "hold")


def grasp_update(state: GraspState, s1: float, s2: float,
                 cfg: ControllerConfig) -> tuple[GraspState, MotorCommand]:
    """Binary open/close of all five fingers, latching between events."""
    if s1 - s2 > cfg.s_bar_close:
        return GraspState.CLOSED, MotorCommand(POSITION, cfg.q_close, "close")
    if s2 - s1 > cfg.s_bar_open:
        return GraspState.OPEN, MotorCommand(POSITION, cfg.q_open, "open")
    q = cfg.q_close if state is GraspState.CLOSED else cfg.q_open
    return state, MotorCommand(POSITION, q, "latch")
