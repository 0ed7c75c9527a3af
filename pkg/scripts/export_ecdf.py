"""Null-law ECDFs of the auxiliary chi-square statistics next to the chi2(1) CDF."""

import argparse
import sys
from pathlib import Path

from scipy import stats

from auxpower.bench import ecdf_rows, preset, rows_to_csv, simulate, write_text


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--reps", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--mode", choices=("plugin", "oracle"), default="oracle")
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args(argv)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ref = stats.chi2(df=1)
    for name in ("chisq-raking-h0", "chisq-condmean-h0"):
        cfg = preset(name, n=(args.n,), replications=args.reps, seed=args.seed, mode=args.mode)
        draws = simulate(cfg, args.n)[:, 1]
        rows = [(v, e, float(ref.cdf(v))) for v, e in ecdf_rows(draws)]
        write_text(out / f"ecdf_{name}.csv", rows_to_csv(("value", "ecdf", "chi2_cdf"), rows))
        ks = stats.kstest(draws, ref.cdf).statistic
        print(f"{name}: KS distance to chi2(1) = {ks:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
