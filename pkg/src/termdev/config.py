"""Flat key-value config files for controllers, device geometry and simulations.

Files are TOML without tables. Numeric keys may carry a unit suffix
(``d_h_mm = 53.8``, ``theta_min_deg = -5.0``, ``v_bar_mm_s = 10``) and
are converted to SI on load; a bare key is taken as already SI. Unknown
keys are rejected.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .controllers import ControllerConfig
from .errors import ConfigMismatch, InvalidConfig, IoError, ParseError
from .mechanics import FlickerGeometry, FourBarGeometry, GearPair, SuctionGeometry
from .signal import DEFAULT_WINDOW

# longest suffixes first so "_mm_s" wins over "_s"
UNIT_SUFFIXES = (
    ("_deg_s", math.pi / 180.0),
    ("_rad_s", 1.0),
    ("_mm_s", 1e-3),
    ("_m_s", 1.0),
    ("_deg", math.pi / 180.0),
    ("_rad", 1.0),
    ("_mm", 1e-3),
    ("_m", 1.0),
)

GEOMETRY_KINDS = {
    "flicker": FlickerGeometry,
    "suction": SuctionGeometry,
    "fourbar": FourBarGeometry,
    "gear": GearPair,
}

DEVICE_GEOMETRY = {
    "flick": FlickerGeometry,
    "twist": GearPair,
    "suction": SuctionGeometry,
    "cut": FourBarGeometry,
    "wrist": None,
    "grasp": None,
}

DEVICES = tuple(DEVICE_GEOMETRY)


def read_toml(path) -> dict:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        raise ParseError(str(exc), path=path, line=line) from exc
    return data


def _split_unit(key: str, fields: set) -> tuple[str, float]:
    if key in fields:
        return key, 1.0
    for suffix, scale in UNIT_SUFFIXES:
        if key.endswith(suffix) and key[: -len(suffix)] in fields:
            return key[: -len(suffix)], scale
    raise InvalidConfig(f"unknown key {key!r}")


def build_dataclass(cls, values: dict, source: str = "config", ignore=()):
    """Instantiate ``cls`` from unit-suffixed flat keys."""
    fields = {f.name: f for f in dataclasses.fields(cls)}
    kwargs: dict[str, Any] = {}
    for key, raw in values.items():
        if key in ignore:
            continue
        try:
            name, scale = _split_unit(key, set(fields))
        except InvalidConfig as exc:
            raise InvalidConfig(f"{source}: {exc}") from None
        if name in kwargs:
            raise InvalidConfig(f"{source}: {name!r} given more than once")
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise InvalidConfig(f"{source}: {key} must be a number, got {raw!r}")
        if not math.isfinite(raw):
            raise InvalidConfig(f"{source}: {key} must be finite")
        if fields[name].type in ("int", int):
            if scale != 1.0 or int(raw) != raw:
                raise InvalidConfig(f"{source}: {key} must be an integer")
            kwargs[name] = int(raw)
        else:
            kwargs[name] = float(raw) * scale
    return cls(**kwargs)


def load_controller_config(path) -> ControllerConfig:
    return build_dataclass(ControllerConfig, read_toml(path), source=str(path))


def geometry_from_dict(values: dict, source: str = "geometry"):
    kind = values.get("kind")
    if kind not in GEOMETRY_KINDS:
        raise InvalidConfig(f"{source}: 'kind' must be one of {sorted(GEOMETRY_KINDS)}, got {kind!r}")
    return build_dataclass(GEOMETRY_KINDS[kind], values, source=source, ignore=("kind",))


def load_geometry(path):
    return geometry_from_dict(read_toml(path), source=str(path))


@dataclass(frozen=True)
class SimulationConfig:
    """Everything ``run_simulation`` needs besides the EMG trace.

    ``crank_rate`` is the cutter crank speed (rad/s) while the motor is
    driven; ``channels`` picks the two EMG channels used as s1 and s2.
    """

    device: str
    controller: ControllerConfig
    geometry: Optional[object]
    duration: float
    dt: float
    window: int = DEFAULT_WINDOW
    channels: tuple = (0, 1)
    crank_rate: float = 2.0 * math.pi

    def __post_init__(self):
        if self.device not in DEVICE_GEOMETRY:
            raise InvalidConfig(f"unknown device {self.device!r}; expected one of {DEVICES}")
        if not self.dt > 0:
            raise InvalidConfig(f"dt must be positive, got {self.dt}")
        if not self.duration >= self.dt:
            raise InvalidConfig(f"duration {self.duration} shorter than one tick ({self.dt})")
        if not math.isclose(self.dt, self.controller.dt, rel_tol=1e-9):
            raise ConfigMismatch(
                f"simulation dt {self.dt} differs from controller dt {self.controller.dt}")
        expected = DEVICE_GEOMETRY[self.device]
        if expected is not None and not isinstance(self.geometry, expected):
            got = type(self.geometry).__name__ if self.geometry is not None else "none"
            raise ConfigMismatch(
                f"device {self.device!r} needs {expected.__name__} geometry, got {got}")
        if expected is None and self.geometry is not None:
            raise ConfigMismatch(f"device {self.device!r} takes no geometry")
        if int(self.window) != self.window or self.window < 1:
            raise InvalidConfig(f"window must be a positive integer, got {self.window}")

    @property
    def n_ticks(self) -> int:
        return int(round(self.duration / self.dt))


_SIM_KEYS = {"device", "controller", "geometry", "duration", "dt", "window",
             "ch_a", "ch_b", "crank_rate", "crank_rate_deg_s", "crank_rate_rad_s"}


def load_simulation_config(path) -> SimulationConfig:
    """Load a simulation config; ``controller`` and ``geometry`` are paths
    relative to the config file, or inline tables."""
    path = Path(path)
    data = read_toml(path)
    unknown = set(data) - _SIM_KEYS
    if unknown:
        raise InvalidConfig(f"{path}: unknown key(s) {sorted(unknown)}")
    if "device" not in data or "duration" not in data:
        raise InvalidConfig(f"{path}: 'device' and 'duration' are required")

    ctrl_ref = data.get("controller", {})
    if isinstance(ctrl_ref, str):
        controller = load_controller_config(path.parent / ctrl_ref)
    else:
        controller = build_dataclass(ControllerConfig, ctrl_ref, source=f"{path} [controller]")

    geo_ref = data.get("geometry")
    if isinstance(geo_ref, str):
        geometry = load_geometry(path.parent / geo_ref)
    elif isinstance(geo_ref, dict):
        geometry = geometry_from_dict(geo_ref, source=f"{path} [geometry]")
    elif geo_ref is None:
        geometry = None
    else:
        raise InvalidConfig(f"{path}: geometry must be a path or a table")

    crank_rate = 2.0 * math.pi
    if "crank_rate" in data:
        crank_rate = float(data["crank_rate"])
    elif "crank_rate_rad_s" in data:
        crank_rate = float(data["crank_rate_rad_s"])
    elif "crank_rate_deg_s" in data:
        crank_rate = math.radians(float(data["crank_rate_deg_s"]))

    for key in ("duration", "dt", "window", "ch_a", "ch_b"):
        if key in data and (isinstance(data[key], bool) or not isinstance(data[key], (int, float))):
            raise InvalidConfig(f"{path}: {key} must be a number")

    return SimulationConfig(
        device=data["device"],
        controller=controller,
        geometry=geometry,
        duration=float(data["duration"]),
        dt=float(data.get("dt", controller.dt)),
        window=int(data.get("window", DEFAULT_WINDOW)),
        channels=(int(data.get("ch_a", 0)), int(data.get("ch_b", 1))),
        crank_rate=crank_rate,
    )
