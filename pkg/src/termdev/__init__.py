"""Simulation, control and evaluation of non-humanoid myoelectric terminal devices."""

from .controllers import ControllerConfig, GraspState, MotorCommand
from .mechanics import FlickerGeometry, FourBarGeometry, GearPair, SuctionGeometry
from .metrics import Polygon, PoseTrace
from .signal import RawEmgTrace, SmoothedTrace, differential, rolling_mav

__version__ = "0.1.0"

__all__ = [
    "ControllerConfig", "GraspState", "MotorCommand",
    "FlickerGeometry", "FourBarGeometry", "GearPair", "SuctionGeometry",
    "Polygon", "PoseTrace",
    "RawEmgTrace", "SmoothedTrace", "differential", "rolling_mav",
]
