"""Command-line interface chaining the pipeline end to end.

Subcommands cover panel standardization, VAR fitting, block-size
calibration, the copula homogeneity test, a single run-all pipeline with
a run manifest, and model simulation for building fixtures. All
outputs are plain CSV or schema-versioned JSON; every stochastic command
requires an explicit seed and is deterministic given it.

Exit codes: 0 success, 2 validation failure, 3 I/O failure,
4 block-size equation not solvable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .blocksize import (
    STATUS_NO_SOLUTION,
    _coarse_grid,
    argmin_integer_block_size,
    solve_block_size,
    trace_curve,
)
from .copula import homogeneity_test
from .errors import GbbootError
from .pipeline import (
    decade_average,
    load_panel,
    seasonal_curve,
    split_halves,
    standardize,
)
from .var import VarModel, fit_var, ljung_box, residuals, select_lag_aic, simulate

__all__ = ["main"]

SCHEMA = "1"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_NO_SOLUTION = 4

_EPILOG = (
    "exit codes: 0 success, 2 validation failure, 3 I/O failure, "
    "4 block-size equation not solvable"
)

_DEFAULTS = {
    "span": 0.3,
    "pmax": 6,
    "half": "first",
    "tol": 1e-4,
    "reps": 2000,
    "threads": 1,
    "calendar_blocks": "on",
    "lags": 20,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbboot",
        description=__doc__.splitlines()[0],
        epilog=_EPILOG,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, epilog=_EPILOG)
        p.add_argument("--config", help="JSON file with defaults; flags win on conflict")
        p.add_argument("--out", help="output directory")
        return p

    p = add("standardize", "estimate seasonal curves and standardize a daily panel")
    p.add_argument("--input", help="daily panel CSV (date,station1,...)")
    p.add_argument("--span", type=float, help="seasonal smoothing span (default 0.3)")

    p = add("fit", "select the VAR order by AIC and fit it on ten-day averages")
    p.add_argument("--input", help="standardized panel CSV")
    p.add_argument("--pair", help="two station names, comma separated")
    p.add_argument("--half", choices=["first", "second", "full"], help="which part of the series")
    p.add_argument("--pmax", type=int, help="largest VAR order to score (default 6)")
    p.add_argument("--lags", type=int, help="Ljung-Box lag count (default 20)")
    p.add_argument("--calendar-blocks", choices=["on", "off"], dest="calendar_blocks",
                   help="restart ten-day blocks each January 1 (default on)")

    p = add("blocksize", "solve the trace-matching equation for the block size")
    p.add_argument("--input", help="standardized panel CSV")
    p.add_argument("--pair", help="two station names, comma separated")
    p.add_argument("--half", choices=["first", "second", "full"], help="which part of the series")
    p.add_argument("--model", help="fitted model JSON")
    p.add_argument("--brange", help="search range lo:hi (default 1.001:n/4)")
    p.add_argument("--tol", type=float, help="relative residual tolerance (default 1e-4)")
    p.add_argument("--calendar-blocks", choices=["on", "off"], dest="calendar_blocks")

    p = add("homogeneity", "block-bootstrap copula homogeneity test between halves")
    p.add_argument("--input", help="standardized panel CSV")
    p.add_argument("--pair", help="two station names, comma separated")
    p.add_argument("--blocksize", type=float, help="explicit block size b")
    p.add_argument("--model", help="fitted model JSON; block size solved from it")
    p.add_argument("--brange", help="search range lo:hi when solving")
    p.add_argument("--tol", type=float, help="solver tolerance when solving")
    p.add_argument("--reps", type=int, help="bootstrap replicates (default 2000)")
    p.add_argument("--seed", type=int, help="random seed (required)")
    p.add_argument("--threads", type=int, help="replicate worker threads (default 1)")
    p.add_argument("--dump-replicates", action="store_true", dest="dump_replicates",
                   help="also write the full replicate column CSV")
    p.add_argument("--calendar-blocks", choices=["on", "off"], dest="calendar_blocks")

    p = add("run-all", "standardize, fit, calibrate, and test in one pass")
    p.add_argument("--input", help="raw daily panel CSV")
    p.add_argument("--pair", help="two station names, comma separated")
    p.add_argument("--span", type=float, help="seasonal smoothing span (default 0.3)")
    p.add_argument("--pmax", type=int, help="largest VAR order to score (default 6)")
    p.add_argument("--lags", type=int, help="Ljung-Box lag count (default 20)")
    p.add_argument("--brange", help="search range lo:hi (default 1.001:n/4)")
    p.add_argument("--tol", type=float, help="solver tolerance (default 1e-4)")
    p.add_argument("--reps", type=int, help="bootstrap replicates (default 2000)")
    p.add_argument("--seed", type=int, help="random seed (required)")
    p.add_argument("--threads", type=int, help="replicate worker threads (default 1)")
    p.add_argument("--calendar-blocks", choices=["on", "off"], dest="calendar_blocks")

    p = add("simulate", "simulate a fitted model to CSV (fixture builder)")
    p.add_argument("--model", help="model JSON")
    p.add_argument("--n", type=int, help="sample length")
    p.add_argument("--seed", type=int, help="random seed (required)")

    return parser


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as handle:
                doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{args.config}: not valid JSON ({exc})") from None
        if not isinstance(doc, dict):
            raise ValueError(f"{args.config}: config must be a JSON object")
        for key, value in doc.items():
            attr = key.replace("-", "_")
            if not hasattr(args, attr) or attr in ("command", "config"):
                raise ValueError(f"{args.config}: unknown config key {key!r}")
            if getattr(args, attr) is None:
                setattr(args, attr, value)
    for key, value in _DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    return args


def _require(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name, None) in (None, ""):
            raise ValueError(f"--{name.replace('_', '-')} is required for {args.command}")


def _out_dir(args: argparse.Namespace) -> str:
    _require(args, "out")
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _write_json(path: str, doc: dict) -> None:
    doc = {"schema": SCHEMA, **doc}
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, indent=2)
        handle.write("\n")


def _parse_pair(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise ValueError(f"--pair must name two stations, got {text!r}")
    return parts[0], parts[1]


def _parse_brange(text):
    if text is None:
        return None
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"--brange must look like lo:hi, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise ValueError(f"--brange must look like lo:hi, got {text!r}") from None


def _load_model(path: str) -> VarModel:
    with open(path, encoding="utf-8") as handle:
        return VarModel.from_dict(json.load(handle))


def _pair_series(args: argparse.Namespace) -> np.ndarray:
    """Ten-day averaged series for the chosen pair and half."""
    _require(args, "input", "pair")
    a, b = _parse_pair(args.pair)
    panel = load_panel(args.input)
    decade = decade_average(panel, calendar_anchored=args.calendar_blocks == "on")
    series = decade.pair(a, b)
    if args.half == "full":
        return series
    first, second = split_halves(series)
    return first if args.half == "first" else second


def _standardize_panel(panel, span: float):
    curves = {sid: seasonal_curve(panel, sid, span=span) for sid in panel.station_ids}
    return standardize(panel, curves), curves


def cmd_standardize(args: argparse.Namespace) -> int:
    _require(args, "input")
    out = _out_dir(args)
    panel = load_panel(args.input)
    standardized, curves = _standardize_panel(panel, args.span)
    path = os.path.join(out, "standardized.csv")
    _write_text(path, standardized.to_csv())
    print(f"wrote {path}")
    for sid, curve in curves.items():
        cpath = os.path.join(out, f"curve_{sid}.csv")
        _write_text(cpath, curve.to_csv())
        print(f"wrote {cpath}")
    return EXIT_OK


def _fit_outputs(series: np.ndarray, pmax: int, lags: int):
    selection = select_lag_aic(series, pmax)
    model = fit_var(series, selection.chosen_p)
    lb = ljung_box(residuals(model, series), lags=lags)
    report = {
        "n": int(series.shape[0]),
        "chosen_p": selection.chosen_p,
        "aic_scores": [[p, score] for p, score in selection.scores],
        "ljung_box": {
            "lags": lb.lags,
            "statistics": lb.statistics.tolist(),
            "p_values": lb.p_values.tolist(),
            "min_p_value": lb.min_p_value,
        },
    }
    return model, report


def cmd_fit(args: argparse.Namespace) -> int:
    out = _out_dir(args)
    series = _pair_series(args)
    model, report = _fit_outputs(series, args.pmax, args.lags)
    model_path = os.path.join(out, "model.json")
    _write_json(model_path, model.to_dict())
    report_path = os.path.join(out, "fit_report.json")
    _write_json(report_path, report)
    print(f"wrote {model_path}")
    print(f"wrote {report_path}")
    print(f"chosen order: {report['chosen_p']}")
    return EXIT_OK


def _solve_outputs(series: np.ndarray, model: VarModel, b_range, tol: float, out: str):
    report = solve_block_size(series, model, b_range=b_range, tol=tol)
    n = series.shape[0]
    lo, hi = b_range if b_range is not None else (1.0 + 1e-3, n / 4.0)
    curve = trace_curve(series, _coarse_grid(float(lo), float(hi)))
    curve_path = os.path.join(out, "trace_curve.csv")
    _write_text(curve_path, curve.to_csv())
    report_path = os.path.join(out, "solve_report.json")
    _write_json(report_path, report.to_dict())
    return report, report_path, curve_path


def cmd_blocksize(args: argparse.Namespace) -> int:
    out = _out_dir(args)
    _require(args, "model")
    series = _pair_series(args)
    model = _load_model(args.model)
    report, report_path, curve_path = _solve_outputs(
        series, model, _parse_brange(args.brange), args.tol, out
    )
    print(f"wrote {report_path}")
    print(f"wrote {curve_path}")
    print(f"status: {report.status}")
    if report.b_hat is not None:
        print(f"b: {report.b_hat!r} (target {report.target!r}, "
              f"achieved {report.achieved!r}, iterations {report.iterations})")
    return EXIT_NO_SOLUTION if report.status == STATUS_NO_SOLUTION else EXIT_OK


def _homogeneity_outputs(first, second, b, args, out: str):
    report = homogeneity_test(
        first, second, b, reps=args.reps, seed=args.seed, threads=args.threads
    )
    report_path = os.path.join(out, "homogeneity.json")
    _write_json(report_path, report.to_dict())
    return report, report_path


def cmd_homogeneity(args: argparse.Namespace) -> int:
    out = _out_dir(args)
    _require(args, "seed")
    args.half = "full"
    series = _pair_series(args)
    first, second = split_halves(series)
    if args.blocksize is not None:
        b = float(args.blocksize)
    elif args.model:
        model = _load_model(args.model)
        solved = solve_block_size(
            first, model, b_range=_parse_brange(args.brange), tol=args.tol
        )
        if solved.b_hat is None:
            print(f"status: {solved.status}", file=sys.stderr)
            return EXIT_NO_SOLUTION
        b = solved.b_hat
    else:
        raise ValueError("pass --blocksize or --model to fix the block size")
    report, report_path = _homogeneity_outputs(first, second, b, args, out)
    print(f"wrote {report_path}")
    if args.dump_replicates:
        dump_path = os.path.join(out, "replicates.csv")
        _write_text(dump_path, report.replicates_csv())
        print(f"wrote {dump_path}")
    print(f"p-value: {report.p_value!r}")
    return EXIT_OK


def cmd_run_all(args: argparse.Namespace) -> int:
    out = _out_dir(args)
    _require(args, "input", "pair", "seed")
    a, b_name = _parse_pair(args.pair)

    panel = load_panel(args.input)
    standardized, curves = _standardize_panel(panel, args.span)
    std_path = os.path.join(out, "standardized.csv")
    _write_text(std_path, standardized.to_csv())
    curve_paths = {}
    for sid, curve in curves.items():
        cpath = os.path.join(out, f"curve_{sid}.csv")
        _write_text(cpath, curve.to_csv())
        curve_paths[sid] = cpath

    decade = decade_average(standardized, calendar_anchored=args.calendar_blocks == "on")
    series = decade.pair(a, b_name)
    first, second = split_halves(series)

    model, fit_report = _fit_outputs(first, args.pmax, args.lags)
    model_path = os.path.join(out, "model.json")
    _write_json(model_path, model.to_dict())
    fit_path = os.path.join(out, "fit_report.json")
    _write_json(fit_path, fit_report)

    solved, solve_path, curve_path = _solve_outputs(
        first, model, _parse_brange(args.brange), args.tol, out
    )
    fallback_b = None
    if solved.b_hat is not None:
        b_used = solved.b_hat
    else:
        # Equation has no root on the range: fall back to the legacy
        # closest-integer rule so the pipeline still completes.
        hi = _parse_brange(args.brange)[1] if args.brange else first.shape[0] / 4.0
        fallback_b = argmin_integer_block_size(first, model, int(hi))
        b_used = float(fallback_b)

    test_report, test_path = _homogeneity_outputs(first, second, b_used, args, out)

    manifest = {
        "command": "run-all",
        "input": args.input,
        "pair": [a, b_name],
        "seed": args.seed,
        "span": args.span,
        "calendar_blocks": args.calendar_blocks,
        "artifacts": {
            "standardized_csv": std_path,
            "curves": curve_paths,
            "model_json": model_path,
            "fit_report_json": fit_path,
            "solve_report_json": solve_path,
            "trace_curve_csv": curve_path,
            "homogeneity_json": test_path,
        },
        "decade": {
            "n_blocks": decade.n_blocks,
            "split_sizes": [int(first.shape[0]), int(second.shape[0])],
        },
        "fit": {"chosen_p": fit_report["chosen_p"],
                "ljung_box_min_p": fit_report["ljung_box"]["min_p_value"]},
        "blocksize": {
            "status": solved.status,
            "b_hat": solved.b_hat,
            "target": solved.target,
            "achieved": solved.achieved,
            "iterations": solved.iterations,
            "fallback_integer_b": fallback_b,
            "b_used": b_used,
        },
        "homogeneity": test_report.to_dict(),
    }
    manifest_path = os.path.join(out, "manifest.json")
    _write_json(manifest_path, manifest)
    print(f"wrote {manifest_path}")
    print(f"blocksize status: {solved.status} (b used: {b_used!r})")
    print(f"p-value: {test_report.p_value!r}")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    out = _out_dir(args)
    _require(args, "model", "n", "seed")
    model = _load_model(args.model)
    series = simulate(model, args.n, args.seed)
    path = os.path.join(out, "simulated.csv")
    _write_text(
        path, "\n".join(",".join(repr(float(v)) for v in row) for row in series) + "\n"
    )
    print(f"wrote {path}")
    return EXIT_OK


_COMMANDS = {
    "standardize": cmd_standardize,
    "fit": cmd_fit,
    "blocksize": cmd_blocksize,
    "homogeneity": cmd_homogeneity,
    "run-all": cmd_run_all,
    "simulate": cmd_simulate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        return _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GbbootError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
