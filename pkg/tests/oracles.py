"""Independent reference computations used as test oracles.

Nothing here imports the package under test.
"""

import itertools
import math

import numpy as np


def adaptive_simpson(f, a, b, rel_tol=1e-8, max_depth=60):
    """Adaptive Simpson quadrature with Richardson correction."""
    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return (recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + recurse(m, b, fm, frm, fb, right, tol / 2.0, depth - 1))

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    whole = simpson(fa, fm, fb, a, b)
    tol = max(rel_tol * abs(whole), 1e-300)
    return recurse(a, b, fa, fm, fb, whole, tol, max_depth)


def mwu_exact_two_sided(a, b):
    """Brute-force exact two-sided MWU p for tie-free samples.

    Enumerates every way of choosing which pooled values belong to ``a``
    and counts U directly by pairwise comparison.
    """
    pooled = list(a) + list(b)
    n_a = len(a)

    def u_of(xs, ys):
        return sum(1 for x in xs for y in ys if x > y)

    u_obs = u_of(a, b)
    mu = len(a) * len(b) / 2.0
    dev = abs(u_obs - mu)
    hits = total = 0
    for idx in itertools.combinations(range(len(pooled)), n_a):
        chosen = set(idx)
        xs = [pooled[i] for i in idx]
        ys = [pooled[i] for i in range(len(pooled)) if i not in chosen]
        total += 1
        if abs(u_of(xs, ys) - mu) >= dev - 1e-9:
            hits += 1
    return hits / total


def permutation_ztest_p(hits_a, n_a, hits_b, n_b, draws, seed=0):
    """Monte-Carlo permutation p for a difference in proportions.

    Shuffles the pooled success labels between the two groups and counts
    draws whose absolute difference in proportions is at least the
    observed one. Returns ``(p_hat, standard_error)``.
    """
    rng = np.random.default_rng(seed)
    total_hits = hits_a + hits_b
    n = n_a + n_b
    # group-a successes under random relabelling are hypergeometric
    perm_a = rng.hypergeometric(total_hits, n - total_hits, n_a, size=draws)
    perm_diff = np.abs(perm_a / n_a - (total_hits - perm_a) / n_b)
    obs = abs(hits_a / n_a - hits_b / n_b)
    p_hat = float(np.mean(perm_diff >= obs - 1e-12))
    return p_hat, math.sqrt(p_hat * (1.0 - p_hat) / draws)


def regular_polygon(n, radius=1.0, phase=0.0, center=(0.0, 0.0)):
    k = np.arange(n)
    ang = phase + 2.0 * np.pi * k / n
    return np.column_stack([center[0] + radius * np.cos(ang), center[1] + radius * np.sin(ang)])


def axis_angle_quat(axis, angle):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    return np.concatenate([[math.cos(angle / 2.0)], math.sin(angle / 2.0) * axis])
