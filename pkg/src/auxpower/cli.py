"""Command line entry point: ``auxpower ztest|chisq|rake|power|gain-table|ecdf``.

Exit codes: 0 success, 2 invalid input or failed auxiliary validation,
1 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace

import numpy as np

from .bench import (
    PRESETS,
    BenchConfig,
    Experiment,
    draw_sample,
    ecdf_csv,
    estimate_power,
    fmt,
    gain_table,
    preset,
    rows_to_csv,
    run_all,
    write_text,
)
from .condmean import weighted_from_sample
from .errors import AuxPowerError, InputError
from .raking import rake

DEFAULT_PRESET = {
    ("z", "raking"): "z-raking",
    ("z", "condmean"): "z-condmean",
    ("chisq", "raking"): "chisq-raking",
    ("chisq", "condmean"): "chisq-condmean",
}


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",") if v.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="auxpower", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "ztest": "classic and auxiliary Z statistics on one sample",
        "chisq": "classic and auxiliary chi-square statistics on one sample",
        "rake": "raked weights of one sample",
        "power": "Monte-Carlo power at each n",
        "gain-table": "acceptance-ratio table over paired (n, t)",
        "ecdf": "empirical CDF of simulated statistics",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--config", help="JSON experiment config")
        sp.add_argument("--preset", choices=PRESETS, help="built-in experiment")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--n", type=_ints, help="comma-separated sample sizes")
        sp.add_argument("--reps", type=int, help="Monte-Carlo replications")
        thr = sp.add_mutually_exclusive_group()
        thr.add_argument("--alpha", type=float)
        thr.add_argument("--t", type=_floats, help="threshold, or one per n")
        sp.add_argument("--out", help="output CSV (default: stdout)")
        mode = sp.add_mutually_exclusive_group()
        mode.add_argument("--oracle", dest="mode", action="store_const", const="oracle")
        mode.add_argument("--plugin", dest="mode", action="store_const", const="plugin")
        sp.add_argument("--aux", choices=("raking", "condmean", "none"))
        sp.add_argument("--workers", type=int)
        if name in ("ztest", "chisq", "rake"):
            sp.add_argument("--sample", help="CSV file with a numeric column")
            sp.add_argument("--column", default="0", help="column name or 0-based index")
        if name == "ecdf":
            sp.add_argument("--which", choices=("classic", "aux"), default="aux")
    return p


def _family(command: str) -> str | None:
    return {"ztest": "z", "chisq": "chisq"}.get(command)


def load_config(args) -> BenchConfig:
    family = _family(args.command)
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = BenchConfig.from_json(json.load(fh))
    else:
        name = args.preset
        if name is None:
            aux = args.aux if args.aux in ("raking", "condmean") else "raking"
            name = DEFAULT_PRESET[(family or "z", aux)]
        cfg = preset(name)
    if family is not None and not cfg.test.startswith(family):
        raise InputError(f"config test {cfg.test!r} does not match command {args.command!r}")
    kw = {}
    if args.aux is not None:
        head = "chisq" if cfg.is_chisq else "z"
        kw["test"] = head if args.aux == "none" else f"{head}-aux-{args.aux}"
    if args.seed is not None:
        kw["seed"] = args.seed
    if args.n is not None:
        kw["n"] = args.n
    if args.reps is not None:
        kw["replications"] = args.reps
    if args.alpha is not None:
        kw["alpha"], kw["t"] = args.alpha, None
    if args.t is not None:
        kw["t"] = args.t
        if args.n is None and len(args.t) > 1 and args.command != "gain-table":
            raise InputError("several thresholds need matching --n")
    if args.mode is not None:
        kw["mode"] = args.mode
    if args.workers is not None:
        kw["workers"] = args.workers
    if args.command == "gain-table" and args.t is not None:
        # thresholds pair with sizes after expansion below
        kw["t"] = None
        kw.setdefault("alpha", cfg.alpha or 0.05)
    return replace(cfg, **kw)


def read_sample(path: str, column: str) -> np.ndarray:
    """Numeric column from a CSV file; a non-numeric first row is a header."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise InputError(f"{path} is empty")
    idx = None
    try:
        [float(v) for v in rows[0]]
    except ValueError:
        header = [h.strip() for h in rows[0]]
        rows = rows[1:]
        if column in header:
            idx = header.index(column)
    if idx is None:
        try:
            idx = int(column)
        except ValueError:
            raise InputError(f"no column {column!r} in {path}") from None
    try:
        return np.array([float(r[idx]) for r in rows])
    except (ValueError, IndexError) as e:
        raise InputError(f"bad value in column {column!r}: {e}") from None


def _one_sample(args, cfg: BenchConfig):
    if args.sample:
        return weighted_from_sample(read_sample(args.sample, args.column))
    return weighted_from_sample(draw_sample(cfg.distribution, cfg.n[0], cfg.seed))


def _emit(args, text: str) -> None:
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_statistic(args, cfg: BenchConfig) -> str:
    s = _one_sample(args, cfg)
    exp = Experiment(cfg)
    classic, aux = exp.statistics(s)
    thr = cfg.t[0] if cfg.t is not None else cfg.thresholds()[0]
    mag = (lambda v: v) if cfg.is_chisq else abs
    header = ("n", "statistic_classic", "statistic_aux", "threshold", "reject_classic", "reject_aux")
    row = (s.n, classic, aux, thr, int(mag(classic) > thr), int(mag(aux) > thr))
    return rows_to_csv(header, [row])


def cmd_rake(args, cfg: BenchConfig) -> str:
    if cfg.aux != "raking":
        cfg = replace(cfg, test=("chisq" if cfg.is_chisq else "z") + "-aux-raking")
    s = _one_sample(args, cfg)
    raked = rake(s, Experiment(cfg).schedule)
    sys.stderr.write(f"raked mean: {fmt(raked.mean())}\n")
    return rows_to_csv(("point", "weight"), zip(raked.points, raked.weights))


def cmd_gain_table(args, cfg: BenchConfig) -> str:
    if args.t is None:
        grid = list(zip(cfg.n, cfg.thresholds()))
    else:
        t = args.t * len(cfg.n) if len(args.t) == 1 else args.t
        if len(t) != len(cfg.n):
            raise InputError("--t must give one threshold or one per --n")
        grid = list(zip(cfg.n, t))
    return gain_table(cfg, grid).to_csv()


def cmd_ecdf(args, cfg: BenchConfig) -> str:
    if len(cfg.n) != 1:
        raise InputError("ecdf needs a single --n")
    stats = run_all(cfg)[cfg.n[0]]
    return ecdf_csv(stats[:, 0 if args.which == "classic" else 1])


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        if args.command in ("ztest", "chisq"):
            text = cmd_statistic(args, cfg)
        elif args.command == "rake":
            text = cmd_rake(args, cfg)
        elif args.command == "power":
            text = estimate_power(cfg).to_csv()
        elif args.command == "gain-table":
            text = cmd_gain_table(args, cfg)
        else:
            text = cmd_ecdf(args, cfg)
        _emit(args, text)
    except OSError as e:
        sys.stderr.write(f"auxpower: I/O error: {e}\n")
        return 1
    except (AuxPowerError, KeyError, TypeError, json.JSONDecodeError) as e:
        sys.stderr.write(f"auxpower: {e}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
