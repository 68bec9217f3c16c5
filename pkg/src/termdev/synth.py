"""Piecewise-constant synthetic EMG for scripted controller runs."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import OverlapError
from .signal import DEFAULT_SAMPLE_RATE, RawEmgTrace


def synth_emg(profile: Iterable[tuple], sample_rate: float = DEFAULT_SAMPLE_RATE,
              duration: float = 1.0, n_channels: int = 2) -> RawEmgTrace:
    """Build a trace from ``(start_s, end_s, channel, level)`` segments.

    A segment covers samples ``k`` with ``start <= k / sample_rate < end``;
    everything not covered is zero. Segments on the same channel must not
    overlap.
    """
    profile = list(profile)
    if not sample_rate > 0:
        raise ValueError("sample_rate must be positive")
    n_samples = int(round(duration * sample_rate))
    if n_samples < 1:
        raise ValueError("duration is shorter than one sample")
    n_channels = max([n_channels] + [int(seg[2]) + 1 for seg in profile])
    data = np.zeros((n_channels, n_samples))

    spans: dict[int, list[tuple[int, int]]] = {}
    for start, end, channel, level in profile:
        if not 0 <= start <= end <= duration + 0.5 / sample_rate:
            raise ValueError(f"segment [{start}, {end}] not within [0, {duration}] s")
        if level < 0:
            raise ValueError(f"segment level must be >= 0, got {level}")
        if channel < 0:
            raise ValueError(f"channel index must be >= 0, got {channel}")
        i0 = int(round(start * sample_rate))
        i1 = min(int(round(end * sample_rate)), n_samples)
        for j0, j1 in spans.get(channel, []):
            if i0 < j1 and j0 < i1:
                raise OverlapError(f"segment [{start}, {end}] s overlaps another on channel {channel}")
        spans.setdefault(channel, []).append((i0, i1))
        data[channel, i0:i1] = level
    return RawEmgTrace(channels=data, sample_rate=sample_rate)
