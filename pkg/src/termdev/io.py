"""Readers for the columnar text formats the toolkit consumes.

All formats are comma-separated with a header row. Every numeric field
must be finite; NaN and Inf are rejected with the offending line number.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import IoError, ParseError
from .metrics import Polygon, PoseTrace
from .signal import RawEmgTrace
from .stats import TrialTable

SAMPLE_SPACING_TOLERANCE = 0.01

POSE_HEADER = ["t", "qw", "qx", "qy", "qz"]
POLYGON_HEADER = ["x", "y"]
CONTINUOUS_HEADER = ["group", "task", "trial", "value"]
BINOMIAL_HEADER = ["group", "task", "target", "hits", "n"]

ROLE_SUFFIXES = {"_chest": "chest", "_upper": "upper_arm", "_lower": "lower_arm"}


def _open_rows(path):
    """Yield ``(line_number, fields)`` for non-blank rows."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc
    reader = csv.reader(text.splitlines())
    for row in reader:
        if not row or all(not f.strip() for f in row):
            continue
        yield reader.line_num, [f.strip() for f in row]


def parse_float(text: str, path=None, line=None) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", path=path, line=line) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {text!r}", path=path, line=line)
    return value


def parse_int(text: str, path=None, line=None) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"not an integer: {text!r}", path=path, line=line) from None


def read_table(path, expected_header: Sequence[str] | None = None, min_columns: int = 1):
    """Return ``(header, [(line, fields), ...])`` from a comma-separated file."""
    rows = _open_rows(path)
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise ParseError("file is empty", path=path) from None
    if expected_header is not None and header != list(expected_header):
        raise ParseError(f"expected header {','.join(expected_header)!r}, got {','.join(header)!r}",
                         path=path, line=header_line)
    if len(header) < min_columns:
        raise ParseError(f"expected at least {min_columns} columns", path=path, line=header_line)
    body = []
    for line, fields in rows:
        if len(fields) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(fields)}", path=path, line=line)
        body.append((line, fields))
    return header, body


def read_numeric(path, expected_header=None, min_columns=1):
    """Read an all-numeric table into ``(header, array, line_numbers)``."""
    header, body = read_table(path, expected_header, min_columns)
    data = np.array([[parse_float(f, path, line) for f in fields] for line, fields in body],
                    dtype=float).reshape(len(body), len(header))
    return header, data, [line for line, _ in body]


def read_emg(path) -> RawEmgTrace:
    """EMG trace: header ``t,ch0,ch1,...``, uniformly spaced ``t`` in seconds."""
    header, data, lines = read_numeric(path, min_columns=2)
    if header[0] != "t":
        raise ParseError("first column must be 't'", path=path, line=1)
    if data.shape[0] < 2:
        raise ParseError("need at least two samples to establish the sample rate", path=path)
    t = data[:, 0]
    steps = np.diff(t)
    for i, step in enumerate(steps):
        if step <= 0:
            raise ParseError("timestamps must be strictly increasing", path=path, line=lines[i + 1])
    spacing = float(np.median(steps))
    bad = np.nonzero(np.abs(steps - spacing) > SAMPLE_SPACING_TOLERANCE * spacing)[0]
    if bad.size:
        raise ParseError(f"sample spacing deviates more than 1% from {spacing:g} s",
                         path=path, line=lines[bad[0] + 1])
    return RawEmgTrace(channels=data[:, 1:].T, sample_rate=1.0 / spacing,
                       channel_roles=tuple(header[1:]))


def tracker_role(path) -> str:
    stem = Path(path).stem
    for suffix, role in ROLE_SUFFIXES.items():
        if stem.endswith(suffix):
            return role
    return stem


def read_pose(path) -> PoseTrace:
    """Single-tracker pose log: header ``t,qw,qx,qy,qz``."""
    _, data, lines = read_numeric(path, POSE_HEADER)
    for i in range(1, data.shape[0]):
        if data[i, 0] <= data[i - 1, 0]:
            raise ParseError("timestamps must be strictly increasing", path=path, line=lines[i])
    norms = np.linalg.norm(data[:, 1:], axis=1)
    for i, n in enumerate(norms):
        if abs(n - 1.0) > 1e-6:
            raise ParseError(f"quaternion norm {n:.9f} is not 1", path=path, line=lines[i])
    rate = 1.0 / float(np.median(np.diff(data[:, 0]))) if data.shape[0] > 1 else 100.0
    return PoseTrace(t=data[:, 0], quats=data[:, 1:], tracker_role=tracker_role(path),
                     sample_rate=rate)


def read_polygon(path) -> Polygon:
    """Contour vertices, header ``x,y``, mm."""
    _, data, _ = read_numeric(path, POLYGON_HEADER)
    return Polygon(data)


def read_values(path) -> list[float]:
    """One sample per row under a single-column header (e.g. ``value``)."""
    header, data, _ = read_numeric(path)
    if len(header) != 1:
        raise ParseError(f"expected a single column, got {len(header)}", path=path, line=1)
    return data[:, 0].tolist()


def read_trial_tables(path) -> list[TrialTable]:
    """Trial outcomes, continuous (``group,task,trial,value``) or binomial
    (``group,task,target,hits,n``).

    Each returned table holds one group's outcomes for one ``(task, trial)``
    or ``(task, target)`` cell; its ``task`` field is ``"task/trial"``.
    """
    header, body = read_table(path)
    cells: dict[tuple, list] = {}
    if header == CONTINUOUS_HEADER:
        kind = "continuous"
        for line, (group, task, trial, value) in body:
            cells.setdefault((group, task, trial), []).append(parse_float(value, path, line))
    elif header == BINOMIAL_HEADER:
        kind = "binomial"
        for line, (group, task, target, hits, n) in body:
            h, k = parse_int(hits, path, line), parse_int(n, path, line)
            if not 0 <= h <= k or k < 1:
                raise ParseError(f"need 0 <= hits <= n and n >= 1, got {h}/{k}", path=path, line=line)
            cells.setdefault((group, task, target), []).append((h, k))
    else:
        raise ParseError(
            f"header must be {','.join(CONTINUOUS_HEADER)!r} or {','.join(BINOMIAL_HEADER)!r}",
            path=path, line=1)
    if not cells:
        raise ParseError("trial table has no rows", path=path)
    return [TrialTable(group=g, task=f"{task}/{cell}", values=tuple(v), kind=kind)
            for (g, task, cell), v in cells.items()]


def write_emg(path, trace: RawEmgTrace, t0: float = 0.0) -> None:
    header = ["t"] + [f"ch{i}" for i in range(trace.n_channels)]
    rows = [[repr(t0 + k / trace.sample_rate)] + [repr(float(v)) for v in trace.channels[:, k]]
            for k in range(trace.n_samples)]
    _write_rows(path, header, rows)


def _write_rows(path, header, rows) -> None:
    try:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc
