"""Command-line interface.

Subcommands:

  run         simulate one scenario, write trace.csv + metrics.json
  compare     run all three observer variants on one scenario and emit a
              comparison report (JSON + aligned text table)
  check-gains evaluate the sliding-gain condition and the stability numbers
  report      compute metrics from an existing trace CSV

Exit codes: 0 success, 2 configuration/file error, 3 numerical abort.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import MetricsReport, channel_metrics, comparison_table, lyapunov_matrices
from .cells import check_gain_condition
from .harness import (
    ConfigError,
    NumericalAbort,
    Scenario,
    SimTrace,
    read_scenario,
    read_trace,
    run_scenario,
)
from .observer import OBSERVER_KINDS

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

ERROR_CHANNELS = ("e_y1", "e_y2", "e_y3", "e_y4", "e_z1", "e_z2")


def trace_metrics(trace: SimTrace, window=(10.0, 30.0),
                  epsilons=None, dwell: int = 1) -> MetricsReport:
    """Metrics over the six error channels of one trace.

    Reaching times need the per-channel dead-bands and are reported only for
    the four measured channels when `epsilons` is given.
    """
    t = trace["t"]
    errors = {
        "e_y1": trace["sigma1"],
        "e_y2": trace["sigma2"],
        "e_y3": trace["sigma3"],
        "e_y4": trace["sigma4"],
        "e_z1": trace["x1"] - trace["z1_hat"],
        "e_z2": trace["x6"] - trace["z2_hat"],
    }
    gains = {f"e_y{i}": trace[f"L1_{i}"] for i in (1, 2, 3, 4)}
    if window[1] > t[-1]:
        window = (min(window[0], float(t[-1]) / 2.0), float(t[-1]))
    channels = {}
    for i, (name, e) in enumerate(errors.items()):
        eps = epsilons[i] if epsilons is not None and i < 4 else None
        channels[name] = channel_metrics(t, e, window=window, epsilon=eps,
                                         dwell=dwell, gains=gains.get(name))
    return MetricsReport(channels=channels, window=window)


def _parse_window(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        lo_f, hi_f = float(lo), float(hi)
    except ValueError as exc:
        raise ConfigError(f"bad window {text!r}, expected LO:HI") from exc
    if not hi_f > lo_f:
        raise ConfigError(f"bad window {text!r}, need LO < HI")
    return lo_f, hi_f


def _write_json(payload: dict, path: Path) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _cmd_run(args) -> int:
    scenario = read_scenario(args.scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    trace = run_scenario(scenario, observer_kind=args.observer, seed=args.seed)
    trace.write_csv(out / "trace.csv")
    kind = args.observer or scenario.observer.kind
    eps = scenario.observer.epsilons() if kind == "astw" else None
    report = trace_metrics(trace, epsilons=eps)
    _write_json(report.to_dict(), out / "metrics.json")
    print(f"wrote {out / 'trace.csv'} ({len(trace)} records) and {out / 'metrics.json'}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    scenario = read_scenario(args.scenario)
    for kind in OBSERVER_KINDS:
        if getattr(scenario.observer, kind) is None:
            raise ConfigError(f"scenario lacks the '{kind}' parameter block "
                              "required by compare")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    reports: dict[str, MetricsReport] = {}
    for kind in OBSERVER_KINDS:
        trace = run_scenario(scenario, observer_kind=kind, seed=args.seed)
        trace.write_csv(out / f"trace_{kind}.csv")
        eps = scenario.observer.epsilons() if kind == "astw" else None
        reports[kind] = trace_metrics(trace, epsilons=eps)
    table = comparison_table(reports)
    _write_json({k: r.to_dict() for k, r in reports.items()}, out / "report.json")
    (out / "report.txt").write_text(table, encoding="utf-8")
    print(table)
    print(f"wrote traces and reports to {out}")
    return EXIT_OK


def _cmd_check_gains(args) -> int:
    if args.lambda1 <= 0.0 or args.lambda2 <= 0.0:
        raise ConfigError("lambda1 and lambda2 must be > 0")
    if args.delta1 < 0.0 or args.delta2 < 0.0:
        raise ConfigError("delta1 and delta2 must be >= 0")
    verdict = check_gain_condition(args.l1, args.lambda1, args.lambda2,
                                   args.delta1, args.delta2)
    check = lyapunov_matrices(args.l1, args.lambda1, args.lambda2,
                              args.delta1, args.delta2, V0=args.v0)
    payload = {
        "ok": verdict.ok,
        "margin": verdict.margin,
        "threshold": verdict.threshold,
        "P": [list(row) for row in check.P],
        "Omega": [list(row) for row in check.Omega],
        "lambda_min_P": check.lambda_min_P,
        "lambda_max_P": check.lambda_max_P,
        "lambda_min_Omega": check.lambda_min_Omega,
        "c1": check.c1,
        "gamma": check.gamma,
        "T_r_bound": check.T_r_bound,
    }
    print(json.dumps(payload, indent=2))
    print(f"gain condition: {'PASS' if verdict.ok else 'FAIL'} "
          f"(margin {verdict.margin:.6g})")
    return EXIT_OK


def _cmd_report(args) -> int:
    trace = read_trace(args.trace)
    eps = None
    if args.scenario is not None:
        scenario = read_scenario(args.scenario)
        eps = scenario.observer.epsilons()
    report = trace_metrics(trace, window=_parse_window(args.window), epsilons=eps,
                           dwell=args.dwell)
    text = json.dumps(report.to_dict(), indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehsobs",
        description="EHSS simulation, sliding-mode observers and fault reconstruction")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario")
    p_run.add_argument("--scenario", required=True, help="scenario JSON file")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--observer", choices=OBSERVER_KINDS, default=None,
                       help="override the scenario's observer kind")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.set_defaults(func=_cmd_run)

    p_cmp = sub.add_parser("compare", help="run all observer variants")
    p_cmp.add_argument("--scenario", required=True)
    p_cmp.add_argument("--out", required=True)
    p_cmp.add_argument("--seed", type=int, default=None)
    p_cmp.set_defaults(func=_cmd_compare)

    p_chk = sub.add_parser("check-gains", help="evaluate the sliding-gain condition")
    p_chk.add_argument("--l1", type=float, required=True)
    p_chk.add_argument("--lambda1", type=float, required=True)
    p_chk.add_argument("--lambda2", type=float, required=True)
    p_chk.add_argument("--delta1", type=float, default=0.0)
    p_chk.add_argument("--delta2", type=float, default=0.0)
    p_chk.add_argument("--v0", type=float, default=None,
                       help="initial Lyapunov value for the reaching-time bound")
    p_chk.set_defaults(func=_cmd_check_gains)

    p_rep = sub.add_parser("report", help="metrics from an existing trace CSV")
    p_rep.add_argument("--trace", required=True)
    p_rep.add_argument("--window", default="10:30",
                       help="LO:HI window for the sup-norm (seconds)")
    p_rep.add_argument("--scenario", default=None,
                       help="scenario JSON providing the dead-bands for reach times")
    p_rep.add_argument("--dwell", type=int, default=1)
    p_rep.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p_rep.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalAbort as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
