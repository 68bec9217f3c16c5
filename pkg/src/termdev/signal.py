"""EMG smoothing: raw electrode samples to rolling mean-absolute-value activations."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ChannelOutOfRange, EmptyInput, InvalidWindow

DEFAULT_SAMPLE_RATE = 200.0
DEFAULT_WINDOW = 20


def _as_channels(channels) -> np.ndarray:
    arr = np.array(channels, dtype=float)
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.ndim != 2:
        raise ValueError("channels must be a sequence of equal-length sample sequences")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class RawEmgTrace:
    """Fixed-rate multi-channel EMG samples.

    ``channels`` has shape (n_channels, n_samples).
    """

    channels: np.ndarray
    sample_rate: float = DEFAULT_SAMPLE_RATE
    channel_roles: tuple = field(default=())

    def __post_init__(self):
        chans = _as_channels(self.channels)
        object.__setattr__(self, "channels", chans)
        if chans.shape[0] < 1:
            raise ValueError("at least one channel is required")
        if not self.sample_rate > 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        roles = tuple(self.channel_roles) or tuple(f"ch{i}" for i in range(chans.shape[0]))
        if len(roles) != chans.shape[0]:
            raise ValueError("channel_roles must label every channel")
        object.__setattr__(self, "channel_roles", roles)

    @property
    def n_samples(self) -> int:
        return self.channels.shape[1]

    @property
    def n_channels(self) -> int:
        return self.channels.shape[0]


@dataclass(frozen=True)
class SmoothedTrace:
    channels: np.ndarray
    sample_rate: float
    window: int

    @property
    def n_samples(self) -> int:
        return self.channels.shape[1]


def rolling_mav(trace: RawEmgTrace, window: int = DEFAULT_WINDOW, rectify: bool = True) -> SmoothedTrace:
    """Rolling mean absolute value of every channel.

    Parameters
    ----------
    trace : RawEmgTrace
        Raw samples.
    window : int
        Window length W in samples.
    rectify : bool, optional
        If False the signed mean is taken instead of the mean of ``|e|``.
        Only useful for comparing against the literal signed formula; the
        output may then be negative.

    Returns
    -------
    SmoothedTrace
        Same length as the input. Samples before the window has filled are
        averaged against implicit zeros, so the first ``window - 1`` values
        ramp up rather than being true steady-state averages.
    """
    if isinstance(window, bool) or int(window) != window:
        raise InvalidWindow(f"window must be an integer, got {window!r}")
    window = int(window)
    if window < 1:
        raise InvalidWindow(f"window must be >= 1, got {window}")
    if trace.n_samples == 0:
        raise EmptyInput("EMG trace has no samples")

    e = np.abs(trace.channels) if rectify else trace.channels
    kernel = np.ones(window)
    out = np.stack([np.convolve(row, kernel)[: trace.n_samples] for row in e]) / window
    out.setflags(write=False)
    return SmoothedTrace(channels=out, sample_rate=trace.sample_rate, window=window)


def differential(s: SmoothedTrace, ch_a: int, ch_b: int) -> np.ndarray:
    """Element-wise ``s[ch_a] - s[ch_b]``."""
    n = s.channels.shape[0]
    for idx in (ch_a, ch_b):
        if not 0 <= idx < n:
            raise ChannelOutOfRange(f"channel {idx} out of range for {n}-channel trace")
    return s.channels[ch_a] - s.channels[ch_b]
