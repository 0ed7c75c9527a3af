"""Monte-Carlo acceptance-ratio tables on the reference distribution.

Writes one CSV per table to --out-dir and prints them. Grid cells whose
samples make the auxiliary estimator degenerate are reported and skipped.
"""

import argparse
import sys
from pathlib import Path

from auxpower.bench import BenchAbortError, POWER_HEADER, gain_table, preset, rows_to_csv, write_text

TABLES = {
    "z_raking": ("z-raking", [(10, 0.5), (50, 0.5), (100, 4), (200, 5), (500, 10), (1000, 12), (2000, 17)]),
    "chisq_condmean_growing_t": (
        "chisq-condmean",
        [(10, 5), (50, 5), (100, 5), (200, 10), (500, 40), (1000, 100), (2000, 220)],
    ),
    "chisq_condmean_t384": ("chisq-condmean", [(n, 3.84) for n in (10, 50, 75, 100, 200, 250, 300)]),
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--mode", choices=("plugin", "oracle"), default="plugin")
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--only", choices=tuple(TABLES), action="append")
    args = ap.parse_args(argv)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for key in args.only or TABLES:
        name, grid = TABLES[key]
        cfg = preset(name, replications=args.reps, seed=args.seed, workers=args.workers, mode=args.mode)
        rows = []
        for cell in grid:
            try:
                rows.extend(gain_table(cfg, [cell]).rows)
            except BenchAbortError as exc:
                print(f"# {key}: n={cell[0]} t={cell[1]} skipped ({exc})", file=sys.stderr)
        text = rows_to_csv(POWER_HEADER, (r.as_tuple() for r in rows))
        write_text(out / f"{key}.csv", text)
        print(f"# {key}\n{text}", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
