"""Closed-loop runner: smoothed EMG -> control law -> device mechanics, one tick per sample."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from . import mechanics as mech
from .config import SimulationConfig
from .controllers import (GraspState, cut_update, flick_update, grasp_update, suction_update,
                          twist_update, wrist_update)
from .errors import ChannelOutOfRange, ConfigMismatch, DegenerateVolume, IoError, TraceTooShort
from .signal import RawEmgTrace, rolling_mav

Value = Union[float, int, str, None]

BASE_COLUMNS = ("tick", "t", "s1", "s2", "branch", "command")

DEVICE_COLUMNS = {
    "flick": ("pin_x", "theta_d", "tooth", "stored_energy"),
    "twist": ("output_torque",),
    "suction": ("plunger_q", "pressure", "suction_force"),
    "cut": ("crank_angle", "rocker_angle"),
    "wrist": ("wrist_q",),
    "grasp": ("grasp_state",),
}

# sample-rate / tick-rate agreement required to run
RATE_TOLERANCE = 0.01


@dataclass(frozen=True)
class Event:
    tick: int
    kind: str
    value: Value = None


@dataclass
class SimulationLog:
    """Per-tick records plus the events raised along the way.

    Branch-change events (``kind == "branch"``) mark every tick where the
    active control-law branch differs from the previous tick, so the set
    of branches a run exercised can be read off the events alone.
    """

    device: str
    dt: float
    columns: tuple
    records: list = field(default_factory=list)
    events: list = field(default_factory=list)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.records]

    def events_of(self, kind: str) -> list[Event]:
        return [e for e in self.events if e.kind == kind]

    def branches(self) -> set:
        return {e.value for e in self.events_of("branch")}


def _check_inputs(cfg: SimulationConfig, trace: RawEmgTrace) -> None:
    if not math.isclose(trace.sample_rate * cfg.dt, 1.0, rel_tol=RATE_TOLERANCE):
        raise ConfigMismatch(
            f"EMG sample rate {trace.sample_rate:g} Hz does not match tick rate {1 / cfg.dt:g} Hz")
    for ch in cfg.channels:
        if not 0 <= ch < trace.n_channels:
            raise ChannelOutOfRange(f"channel {ch} out of range for {trace.n_channels}-channel trace")
    if trace.n_samples < cfg.n_ticks:
        raise TraceTooShort(
            f"trace has {trace.n_samples} samples, simulation needs {cfg.n_ticks}")
    if cfg.device == "suction":
        c, g = cfg.controller, cfg.geometry
        if not (math.isclose(c.q_max, g.q_max) and math.isclose(c.q_rest, g.q_rest)):
            raise ConfigMismatch("controller q_max/q_rest disagree with suction geometry")
        if c.q_min < 0:
            raise ConfigMismatch("suction q_min must be >= 0")


class _Flicker:
    def __init__(self, cfg: SimulationConfig):
        self.cfg = cfg
        self.g = cfg.geometry
        self.teeth = mech.ratchet_positions(self.g)
        self.q = 0.0
        self.level = None  # 0-based latched tooth
        self.prev_branch = None
        self.at_stroke = False

    def latched_x(self) -> float:
        return 0.0 if self.level is None else self.teeth[self.level]

    def latched_energy(self) -> float:
        return mech.stored_energy(mech.draw_angle(self.latched_x(), self.g), self.g)

    def step(self, tick, s1, s2, events):
        if self.prev_branch == "release":
            # carriage lowered, draw tendon re-wound: motor back at home
            self.q = 0.0
        cmd = flick_update(self.q, s1, s2, self.cfg.controller)
        if cmd.clamped:
            events.append(Event(tick, "clamp", cmd.value))

        if cmd.branch == "release":
            if self.prev_branch != "release":
                events.append(Event(tick, "release", self.latched_energy()))
            self.level = None
            self.at_stroke = False
            pin_x = 0.0
        elif cmd.branch == "draw":
            pin_x = min(cmd.value, self.g.stroke)
            level = mech.ratchet_latch(pin_x, self.g)
            if level is not None and (self.level is None or level > self.level):
                first = 0 if self.level is None else self.level + 1
                for lv in range(first, level + 1):
                    events.append(Event(tick, "latch", lv + 1))
                self.level = level
            if pin_x >= self.g.stroke and not self.at_stroke:
                events.append(Event(tick, "stroke_limit", pin_x))
                self.at_stroke = True
        else:
            pin_x = self.latched_x()

        self.q = cmd.value
        self.prev_branch = cmd.branch
        theta = mech.draw_angle(pin_x, self.g)
        tooth = 0 if self.level is None else self.level + 1
        return cmd, (pin_x, theta, tooth, self.latched_energy())


class _Twister:
    def __init__(self, cfg):
        self.cfg = cfg

    def step(self, tick, s1, s2, events):
        cmd = twist_update(s1, s2, self.cfg.controller)
        return cmd, (mech.gear_output_torque(cmd.value, self.cfg.geometry),)


class _Suction:
    def __init__(self, cfg):
        self.cfg = cfg

    def step(self, tick, s1, s2, events):
        cmd = suction_update(s1, s2, self.cfg.controller)
        if cmd.clamped:
            events.append(Event(tick, "clamp", cmd.value))
        try:
            dp = mech.pressure_differential(cmd.value, self.cfg.geometry)
            force = -self.cfg.geometry.plunger_area * dp
        except DegenerateVolume:
            dp = force = None
        return cmd, (cmd.value, dp, force)


class _Cutter:
    def __init__(self, cfg):
        self.cfg = cfg
        _, self.crank = mech.collinear_crank_angles(cfg.geometry)

    def step(self, tick, s1, s2, events):
        cmd = cut_update(s1, self.cfg.controller)
        if cmd.value > 0:
            self.crank = math.remainder(self.crank + self.cfg.crank_rate * self.cfg.dt, 2 * math.pi)
        return cmd, (self.crank, mech.rocker_angle(self.crank, self.cfg.geometry))


class _Wrist:
    def __init__(self, cfg):
        self.cfg = cfg
        self.q = 0.0

    def step(self, tick, s1, s2, events):
        cmd = wrist_update(self.q, s1, s2, self.cfg.controller)
        self.q = cmd.value
        return cmd, (self.q,)


class _Grasp:
    def __init__(self, cfg):
        self.cfg = cfg
        self.state = GraspState.OPEN

    def step(self, tick, s1, s2, events):
        self.state, cmd = grasp_update(self.state, s1, s2, self.cfg.controller)
        return cmd, (self.state.value,)


_DEVICES = {"flick": _Flicker, "twist": _Twister, "suction": _Suction,
            "cut": _Cutter, "wrist": _Wrist, "grasp": _Grasp}


def run_simulation(cfg: SimulationConfig, trace: RawEmgTrace) -> SimulationLog:
    """Run one device for ``cfg.duration`` seconds against an EMG trace.

    The controller consumes the smoothed sample of the same index at each
    tick; the trace may be longer than the run, never shorter.
    """
    _check_inputs(cfg, trace)
    smoothed = rolling_mav(trace, cfg.window)
    a, b = cfg.channels
    s1_all, s2_all = smoothed.channels[a], smoothed.channels[b]
    device = _DEVICES[cfg.device](cfg)
    log = SimulationLog(device=cfg.device, dt=cfg.dt,
                        columns=BASE_COLUMNS + DEVICE_COLUMNS[cfg.device])
    prev_branch = None
    for k in range(cfg.n_ticks):
        s1, s2 = float(s1_all[k]), float(s2_all[k])
        tick_events: list[Event] = []
        cmd, state = device.step(k, s1, s2, tick_events)
        if cmd.branch != prev_branch:
            log.events.append(Event(k, "branch", cmd.branch))
            prev_branch = cmd.branch
        log.events.extend(tick_events)
        log.records.append((k, k * cfg.dt, s1, s2, cmd.branch, cmd.value) + tuple(state))
    return log


def _fmt(v: Value) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def log_rows(log: SimulationLog):
    """Header and rows of the columnar log; events are folded into a last column."""
    by_tick: dict[int, list[str]] = {}
    for e in log.events:
        by_tick.setdefault(e.tick, []).append(e.kind if e.value is None else f"{e.kind}={_fmt(e.value)}")
    header = list(log.columns) + ["events"]
    rows = [[_fmt(v) for v in rec] + [";".join(by_tick.get(rec[0], []))] for rec in log.records]
    return header, rows


def write_log(log: SimulationLog, path) -> None:
    header, rows = log_rows(log)
    try:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc
