"""Between-group hypothesis tests and multiple-comparison correction."""

from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.stats import rankdata

from .errors import DegenerateProportions, EmptyInput, InvalidP

# combined sample size up to which tie-free MWU p-values are enumerated exactly
EXACT_MAX_N = 12
CONTINUITY = 0.5

_P_FLOOR = sys.float_info.min


class MWUResult(NamedTuple):
    U: float
    p: float
    method: str


class ZTestResult(NamedTuple):
    z: float
    p: float


@dataclass(frozen=True)
class TrialTable:
    """Per-trial outcomes of one group on one task.

    ``kind`` is "continuous" (``values`` are the outcomes) or "binomial"
    (``values`` holds ``(successes, n)`` pairs).
    """

    group: str
    task: str
    values: tuple
    kind: str = "continuous"

    def __post_init__(self):
        if not self.values:
            raise EmptyInput(f"trial table {self.group}/{self.task} is empty")
        if self.kind == "binomial":
            for hits, n in self.values:
                if not 0 <= hits <= n:
                    raise ValueError(f"binomial cell {hits}/{n} has successes outside [0, n]")
        elif self.kind != "continuous":
            raise ValueError(f"unknown trial table kind {self.kind!r}")


def norm_sf_two_sided(z: float) -> float:
    """``P(|Z| >= |z|)`` for a standard normal Z."""
    return max(math.erfc(abs(z) / math.sqrt(2.0)), _P_FLOOR)


def _u_statistics(a, b):
    n_a, n_b = len(a), len(b)
    ranks = rankdata(np.concatenate([a, b]))
    u_a = ranks[:n_a].sum() - n_a * (n_a + 1) / 2.0
    return u_a, n_a * n_b - u_a, ranks


def mwu_exact_p(u: float, n_a: int, n_b: int) -> float:
    """Two-sided exact p by enumerating every rank split of a tie-free sample."""
    N = n_a + n_b
    offset = n_a * (n_a + 1) // 2
    u_small = min(u, n_a * n_b - u)
    total = 0
    extreme = 0
    for ranks in itertools.combinations(range(1, N + 1), n_a):
        total += 1
        if sum(ranks) - offset <= u_small + 1e-9:
            extreme += 1
    return min(1.0, 2.0 * extreme / total)


def mwu_normal_p(u: float, n_a: int, n_b: int, ranks=None) -> float:
    """Two-sided normal-approximation p with tie-corrected variance and continuity correction."""
    N = n_a + n_b
    mu = n_a * n_b / 2.0
    tie_term = 0.0
    if ranks is not None:
        _, counts = np.unique(ranks, return_counts=True)
        tie_term = float(np.sum(counts ** 3 - counts)) / (N * (N - 1)) if N > 1 else 0.0
    var = n_a * n_b / 12.0 * ((N + 1) - tie_term)
    if var <= 0:
        return 1.0
    z = max(0.0, abs(u - mu) - CONTINUITY) / math.sqrt(var)
    return min(1.0, norm_sf_two_sided(z))


def mann_whitney_u(a: Sequence[float], b: Sequence[float]) -> MWUResult:
    """Two-sided Mann-Whitney U test.

    Returns ``U = min(U_a, U_b)`` with midranks for ties. The p-value is
    exact when the pooled sample has at most ``EXACT_MAX_N`` values and no
    ties, otherwise normal with tie correction and a 0.5 continuity
    correction.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise EmptyInput("both samples must be non-empty")
    u_a, u_b, ranks = _u_statistics(a, b)
    u = min(u_a, u_b)
    n_a, n_b = a.size, b.size
    has_ties = np.unique(ranks).size != ranks.size
    if n_a + n_b <= EXACT_MAX_N and not has_ties:
        return MWUResult(float(u), mwu_exact_p(u, n_a, n_b), "exact")
    return MWUResult(float(u), mwu_normal_p(u, n_a, n_b, ranks), "normal")


def two_proportion_ztest(hits_a: int, n_a: int, hits_b: int, n_b: int) -> ZTestResult:
    """Pooled two-proportion z-test, two-sided."""
    if n_a < 1 or n_b < 1:
        raise ValueError("group sizes must be at least 1")
    if not (0 <= hits_a <= n_a and 0 <= hits_b <= n_b):
        raise ValueError("hits must lie in [0, n]")
    pooled = (hits_a + hits_b) / (n_a + n_b)
    if pooled in (0.0, 1.0):
        raise DegenerateProportions("pooled proportion is 0 or 1; z is undefined")
    se = math.sqrt(pooled * (1.0 - pooled) * (1.0 / n_a + 1.0 / n_b))
    z = (hits_a / n_a - hits_b / n_b) / se
    return ZTestResult(z, norm_sf_two_sided(z))


def bonferroni(p_values: Sequence[float], m: int | None = None) -> list[float]:
    """Multiply each p-value by the number of comparisons ``m``, capped at 1."""
    p_values = list(p_values)
    if m is None:
        m = max(1, len(p_values))
    if m < max(1, len(p_values)):
        raise ValueError(f"m={m} is smaller than the number of p-values ({len(p_values)})")
    for p in p_values:
        if not 0.0 < p <= 1.0:
            raise InvalidP(f"p-value {p} outside (0, 1]")
    return [min(1.0, p * m) for p in p_values]


def significance_stars(p: float) -> str:
    if not 0.0 < p <= 1.0:
        raise InvalidP(f"p-value {p} outside (0, 1]")
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return "ns"
