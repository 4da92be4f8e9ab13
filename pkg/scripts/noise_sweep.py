"""Sweep noise levels over the desk-manifold suite for each estimator.

Prints one CSV row per (noise, method) with MAE / bias / exact-hit rate
averaged over the nine manifolds and the requested seed repeats.

    python3 scripts/noise_sweep.py --sizes 1000 --noises 0,0.01,0.05 --repeats 3
"""

import argparse
import sys

import numpy as np

from dimgrid.datagen import ManifoldSpec, desk_suite, gen_manifold
from dimgrid.estimators import dcf_estimate, edcf_estimate, mle_estimate, twonn_estimate
from dimgrid.refcache import ReferenceCache


def estimate_one(method, X, cache, seed):
    if method == "edcf":
        return float(edcf_estimate(X, cache=cache, seed=seed).m_hat)
    if method == "dcf":
        return float(dcf_estimate(X).m_hat)
    if method == "twonn":
        return twonn_estimate(X)
    if method == "mle":
        return mle_estimate(X, k=10)
    raise SystemExit(f"unknown method {method!r}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="1000")
    ap.add_argument("--noises", default="0.0,0.01,0.05")
    ap.add_argument("--methods", default="edcf,twonn,mle")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cache", default=None, help="reference cache path (kept in memory if unset)")
    args = ap.parse_args(argv)

    sizes = [int(s) for s in args.sizes.split(",") if s]
    noises = [float(s) for s in args.noises.split(",") if s]
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    cache = ReferenceCache(args.cache)

    print("method,n,noise,mae,bias,exact_pct")
    for size in sizes:
        for noise in noises:
            for method in methods:
                errors = []
                for rep in range(args.repeats):
                    seed = args.seed + rep
                    for spec in desk_suite(size, noise, seed):
                        X = gen_manifold(spec)
                        est = estimate_one(method, X, cache, seed)
                        errors.append(est - spec.intrinsic_dim)
                errors = np.asarray(errors)
                exact = float(np.mean(np.round(errors) == 0) * 100.0)
                print(
                    f"{method},{size},{noise},"
                    f"{np.mean(np.abs(errors)):.4f},{np.mean(errors):.4f},{exact:.1f}"
                )
    return 0


if __name__ == "__main__":
    sys.exit(main())
