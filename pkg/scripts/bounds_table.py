"""Print the lower/middle/upper connectivity-factor table for one ambient
dimension, exact rationals next to decimals. Optionally classify a CF value.

    python3 scripts/bounds_table.py 3
    python3 scripts/bounds_table.py 3 --classify 0.3968
"""

import argparse
import sys

from dimgrid.bounds import classify_lmu, lmu_table


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ambient", type=int, help="ambient dimension n")
    ap.add_argument("--classify", type=float, default=None, metavar="CF")
    args = ap.parse_args(argv)

    table = lmu_table(args.ambient)
    print(f"n = {args.ambient}")
    print(f"{'m':>3} {'lower':>14} {'middle':>14} {'upper':>14}   exact")
    for m in range(args.ambient + 1):
        lo, mid, up = table.row(m)
        print(
            f"{m:>3} {float(lo):>14.10f} {float(mid):>14.10f} {float(up):>14.10f}"
            f"   {lo} | {mid} | {up}"
        )
    if args.classify is not None:
        m_hat, candidates = classify_lmu(args.classify, args.ambient)
        print(f"cf = {args.classify}: m = {m_hat}, candidate intervals {candidates}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
