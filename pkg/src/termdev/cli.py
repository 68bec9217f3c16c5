"""Command-line entry point (``termdev``)."""

from __future__ import annotations

import argparse
import math
import sys

from . import io
from .config import load_simulation_config
from .errors import IoError, ToolkitError
from .metrics import mean_abs_angular_deviation, relative_circularity
from .report import compare_groups, format_report
from .simulation import run_simulation, write_log
from .stats import bonferroni, mann_whitney_u, significance_stars, two_proportion_ztest
from .synth import synth_emg


def _cmd_simulate(args):
    cfg = load_simulation_config(args.config)
    trace = io.read_emg(args.emg)
    log = run_simulation(cfg, trace)
    write_log(log, args.out)
    print(f"{cfg.device}: {len(log.records)} ticks, {len(log.events)} events -> {args.out}")


def _cmd_circularity(args):
    cut = io.read_polygon(args.cut)
    template = io.read_polygon(args.template)
    print(f"{relative_circularity(cut, template):.4f}")


def _cmd_deviation(args):
    print("tracker,mean_deviation_deg")
    for path in args.poses:
        trace = io.read_pose(path)
        print(f"{trace.tracker_role},{math.degrees(mean_abs_angular_deviation(trace)):.4f}")


def _print_test(name, stat, p, m):
    p_corr = bonferroni([p], m)[0]
    print(f"test {name}")
    print(f"statistic {stat:.4f}")
    print(f"p {p:.4f}")
    print(f"p_corrected {p_corr:.4f}")
    print(f"stars {significance_stars(p_corr)}")


def _cmd_mwu(args):
    res = mann_whitney_u(io.read_values(args.a), io.read_values(args.b))
    _print_test(f"mwu ({res.method})", res.U, res.p, args.bonferroni)


def _cmd_ztest(args):
    res = two_proportion_ztest(args.hits_a, args.n_a, args.hits_b, args.n_b)
    _print_test("ztest", res.z, res.p, args.bonferroni)


def _cmd_report(args):
    rows = compare_groups(io.read_trial_tables(args.table), m=args.bonferroni)
    text = format_report(rows)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoError(f"cannot write {args.out}: {exc.strerror or exc}") from exc
    else:
        sys.stdout.write(text)


def _segment(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("segment must be start,end,channel,level")
    try:
        start, end, level = float(parts[0]), float(parts[1]), float(parts[3])
        channel = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad segment {text!r}") from None
    return start, end, channel, level


def _cmd_synth(args):
    trace = synth_emg(args.segment or [], sample_rate=args.rate, duration=args.duration,
                      n_channels=args.channels)
    io.write_emg(args.out, trace)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="termdev",
        description="Simulate, control and evaluate non-humanoid prosthetic terminal devices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a device controller against an EMG trace")
    p.add_argument("--config", required=True, help="simulation config (TOML)")
    p.add_argument("--emg", required=True, help="EMG trace, header t,ch0,ch1,...")
    p.add_argument("--out", required=True, help="output log path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("synth", help="write a piecewise-constant synthetic EMG trace")
    p.add_argument("--segment", action="append", type=_segment,
                   help="start,end,channel,level (repeatable)")
    p.add_argument("--duration", type=float, required=True)
    p.add_argument("--rate", type=float, default=200.0)
    p.add_argument("--channels", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_synth)

    metrics = sub.add_parser("metrics", help="evaluation metrics").add_subparsers(
        dest="metric", required=True)
    p = metrics.add_parser("circularity", help="relative circularity of a cut contour")
    p.add_argument("--cut", required=True)
    p.add_argument("--template", required=True)
    p.set_defaults(func=_cmd_circularity)
    p = metrics.add_parser("deviation", help="mean absolute angular deviation per tracker")
    p.add_argument("--poses", required=True, nargs="+")
    p.set_defaults(func=_cmd_deviation)

    stats = sub.add_parser("stats", help="two-group hypothesis tests").add_subparsers(
        dest="test", required=True)
    p = stats.add_parser("mwu", help="Mann-Whitney U test on two value files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--bonferroni", type=int, default=1, metavar="M")
    p.set_defaults(func=_cmd_mwu)
    p = stats.add_parser("ztest", help="pooled two-proportion z-test")
    p.add_argument("--hits-a", type=int, required=True)
    p.add_argument("--n-a", type=int, required=True)
    p.add_argument("--hits-b", type=int, required=True)
    p.add_argument("--n-b", type=int, required=True)
    p.add_argument("--bonferroni", type=int, default=1, metavar="M")
    p.set_defaults(func=_cmd_ztest)

    p = sub.add_parser("report", help="NH-vs-H comparison report for a trial table")
    p.add_argument("--table", required=True)
    p.add_argument("--bonferroni", type=int, default=None, metavar="M",
                   help="comparisons per task (default: cells in that task)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ToolkitError as exc:
        kind = type(exc).__name__
        print(f"termdev: {kind}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"termdev: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
