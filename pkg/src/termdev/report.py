"""Between-group comparison report over a trial table."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .stats import TrialTable, bonferroni, mann_whitney_u, significance_stars, two_proportion_ztest

GROUPS = ("NH", "H")
REPORT_HEADER = ("task", "comparison", "test", "statistic", "p_raw", "p_corrected", "stars")


@dataclass(frozen=True)
class Comparison:
    task: str
    comparison: str
    test: str
    statistic: float
    p_raw: float
    p_corrected: float
    stars: str


def compare_groups(tables: list[TrialTable], m: Optional[int] = None) -> list[Comparison]:
    """NH-vs-H test for every cell of the table, Bonferroni-corrected per task.

    Cells are ``task/trial`` (continuous outcomes, Mann-Whitney U) or
    ``task/target`` (hit counts, pooled two-proportion z-test). Unless ``m``
    is given, each task's correction uses the number of cells it has.
    """
    cells: dict[str, dict[str, TrialTable]] = {}
    for tab in tables:
        if tab.group not in GROUPS:
            raise ValueError(f"unknown group {tab.group!r}; expected one of {GROUPS}")
        cells.setdefault(tab.task, {})[tab.group] = tab

    raw = []
    for cell, groups in cells.items():
        missing = [g for g in GROUPS if g not in groups]
        if missing:
            raise ValueError(f"cell {cell!r} has no data for group(s) {missing}")
        nh, h = groups["NH"], groups["H"]
        if nh.kind == "binomial":
            res = two_proportion_ztest(sum(x for x, _ in nh.values), sum(n for _, n in nh.values),
                                       sum(x for x, _ in h.values), sum(n for _, n in h.values))
            raw.append((cell, "ztest", res.z, res.p))
        else:
            res = mann_whitney_u(nh.values, h.values)
            raw.append((cell, "mwu", res.U, res.p))

    per_task: dict[str, list[int]] = {}
    for i, (cell, *_rest) in enumerate(raw):
        per_task.setdefault(cell.split("/", 1)[0], []).append(i)

    out = []
    for task, idx in per_task.items():
        adjusted = bonferroni([raw[i][3] for i in idx], m if m is not None else len(idx))
        for i, p_adj in zip(idx, adjusted):
            cell, test, stat, p = raw[i]
            out.append(Comparison(task, cell.split("/", 1)[1], test, stat, p, p_adj,
                                  significance_stars(p_adj)))
    return out


def format_report(rows: list[Comparison]) -> str:
    lines = [",".join(REPORT_HEADER)]
    for r in rows:
        lines.append(f"{r.task},{r.comparison},{r.test},{r.statistic:.6g},"
                     f"{r.p_raw:.6g},{r.p_corrected:.6g},{r.stars}")
    return "\n".join(lines) + "\n"
