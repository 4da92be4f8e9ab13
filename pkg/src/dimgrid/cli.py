"""Command-line interface.

Subcommands: estimate, bounds, calibrate, generate, boundary, benchmark.
All structured output is JSON (or CSV for benchmark tables) and includes
the seed and library version, so runs are reproducible from their own
records.  Exit codes: 0 success, 2 I/O failure, 3 invalid configuration.
"""

from __future__ import annotations

import argparse
import decimal
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import repeat

import numpy as np

from . import __version__
from .bounds import lmu_table
from .datagen import (
    IFS_PRESETS,
    ManifoldSpec,
    desk_suite,
    gen_circles,
    gen_ifs,
    gen_manifold,
    gen_sinusoids,
)
from .errors import DimgridError
from .estimators import (
    DEFAULT_BASE_TARGET,
    DEFAULT_D_MAX,
    dcf_estimate,
    edcf_estimate,
    generate_reference_model,
    mle_estimate,
    twonn_estimate,
)
from .fractal import LabelRaster, boundary_report, extract_boundary, knn_label_grid
from .gridding import read_points_csv, write_points_csv
from .refcache import ReferenceCache

CACHE_ENV_VAR = "DIMGRID_CACHE"

EXIT_OK = 0
EXIT_IO = 2
EXIT_CONFIG = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; config errors are 3 here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    """Validated knobs for one estimation run."""

    method: str
    ip_min: float | None
    ip_max: float | None
    base_target: float
    d_max: int
    seed: int
    engine: str
    noise: float | None
    cache_path: str | None
    cache_readonly: bool
    k: int

    @property
    def ip_range(self):
        if self.ip_min is None and self.ip_max is None:
            return None
        lo = self.ip_min if self.ip_min is not None else max(0.1, self.ip_max - 10.0)
        hi = self.ip_max if self.ip_max is not None else min(100.0, self.ip_min + 10.0)
        return (lo, hi)


def _resolve_cache(cfg: RunConfig) -> ReferenceCache | None:
    path = cfg.cache_path or os.environ.get(CACHE_ENV_VAR)
    if path is None:
        return None
    return ReferenceCache(path, readonly=cfg.cache_readonly)


def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_estimate(args) -> int:
    cfg = RunConfig(
        method=args.method,
        ip_min=args.ip_min,
        ip_max=args.ip_max,
        base_target=args.base_target,
        d_max=args.dmax,
        seed=args.seed,
        engine=args.engine,
        noise=args.noise,
        cache_path=args.cache,
        cache_readonly=args.cache_readonly,
        k=args.k,
    )
    points = read_points_csv(args.infile, header=args.header)
    started = time.perf_counter()
    if cfg.method == "dcf":
        report = dcf_estimate(
            points, cfg.ip_range, cfg.d_max, cfg.engine, cfg.base_target
        ).to_dict()
    elif cfg.method == "edcf":
        report = edcf_estimate(
            points,
            cfg.ip_range,
            cfg.d_max,
            cfg.base_target,
            _resolve_cache(cfg),
            cfg.noise,
            engine=cfg.engine,
            seed=cfg.seed,
        ).to_dict()
    elif cfg.method == "twonn":
        value = twonn_estimate(points)
        report = {"method": "twonn", "m_hat": int(round(value)), "raw_estimate": value}
    elif cfg.method == "mle":
        value = mle_estimate(points, cfg.k)
        report = {"method": "mle", "m_hat": int(round(value)), "raw_estimate": value}
    else:
        raise DimgridError(f"unknown method {cfg.method!r}")
    report["runtime_s"] = round(time.perf_counter() - started, 6)
    report["seed"] = cfg.seed
    report["version"] = __version__
    report["input"] = args.infile
    _emit(report, args.out)
    return EXIT_OK


def _decimal_str(value: Fraction, digits: int = 12) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        return str(
            decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
        )


def cmd_bounds(args) -> int:
    table = lmu_table(args.ambient)
    if args.json:
        payload = {
            "ambient": table.n,
            "rows": [
                {
                    "m": m,
                    "lower": _decimal_str(lo),
                    "middle": _decimal_str(mid),
                    "upper": _decimal_str(up),
                }
                for m, lo, mid, up in table.rows
            ],
            "version": __version__,
        }
        _emit(payload, args.out)
    else:
        lines = [f"m  lower / middle / upper   (ambient n={table.n})"]
        for m, lo, mid, up in table.rows:
            lines.append(f"{m}  {float(lo):.6g} / {float(mid):.6g} / {float(up):.6g}")
        text = "\n".join(lines)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    return EXIT_OK


def cmd_calibrate(args) -> int:
    cache_path = args.cache or os.environ.get(CACHE_ENV_VAR)
    cache = ReferenceCache(cache_path) if cache_path else None
    if args.ip_min is not None and args.ip_max is not None:
        ip_range = (args.ip_min, args.ip_max)
    else:
        from .estimators import adaptive_target

        target = adaptive_target(args.base_target, args.d)
        ip_range = (target - 5.0, min(100.0, target + 5.0))
    model = generate_reference_model(
        args.n, args.d, args.dmax, ip_range, args.noise, cache, args.seed
    )
    payload = {
        "key": {
            "d": model.key.d,
            "d_max": model.key.d_max,
            "n_bucket": model.key.n_bucket,
            "noise_bucket": model.key.noise_bucket,
            "ip_target": model.key.ip_target,
        },
        "anchors": [float(a) for a in model.anchors.values],
        "from_cache": model.from_cache,
        "cache_path": cache_path,
        "seed": args.seed,
        "version": __version__,
    }
    _emit(payload, args.out)
    return EXIT_OK


_MANIFOLD_DEFAULTS = {
    "sphere": (10, 11),
    "affine": (3, 5),
    "uniform_box": (20, 20),
    "helix1d": (1, 3),
    "helix2d": (2, 3),
    "swiss_roll": (2, 3),
    "mobius": (2, 3),
    "scurve": (2, 3),
    "spiral": (1, 13),
}


def cmd_generate(args) -> int:
    name = args.dataset
    labels = None
    if name in _MANIFOLD_DEFAULTS:
        m_default, d_default = _MANIFOLD_DEFAULTS[name]
        spec = ManifoldSpec(
            name,
            args.intrinsic if args.intrinsic is not None else m_default,
            args.ambient if args.ambient is not None else d_default,
            args.n,
            args.noise,
            args.seed,
        )
        points = gen_manifold(spec)
    elif name in ("ccd", "occd"):
        kind = "concentric" if name == "ccd" else "overlapping"
        rate = args.noise if args.noise_given else None
        points, labels = gen_circles(kind, args.n, noise_rate=rate, seed=args.seed)
    elif name == "sd":
        rate = args.noise if args.noise_given else 0.5
        points, labels = gen_sinusoids(args.n, noise_rate=rate, seed=args.seed)
    elif name in IFS_PRESETS:
        if args.noise_given and args.noise != 0.0:
            raise DimgridError("IFS presets do not take a noise level")
        points = gen_ifs(name, args.n, args.seed)
    else:
        raise DimgridError(f"unknown dataset {name!r}")
    write_points_csv(args.out, points, labels)
    payload = {
        "dataset": name,
        "n": int(points.shape[0]),
        "d": int(points.shape[1]),
        "labeled": labels is not None,
        "noise": args.noise,
        "seed": args.seed,
        "out": args.out,
        "version": __version__,
    }
    _emit(payload, None)
    return EXIT_OK


def _read_raster_csv(path) -> np.ndarray:
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if width is None:
                width = len(parts)
            elif len(parts) != width:
                raise ValueError(f"ragged raster row at line {lineno + 1}")
            rows.append([int(p) for p in parts])
    return np.asarray(rows, dtype=np.int64)


def cmd_boundary(args) -> int:
    objects = []
    if args.raster:
        raster = LabelRaster(_read_raster_csv(args.raster), tuple(args.extent))
    else:
        if not args.train:
            raise DimgridError("either --train or --raster is required")
        points, labels = read_points_csv(args.train, header=args.header, label_column=True)
        raster = knn_label_grid(points, labels, args.k, args.resolution)
        objects = [points[labels == c] for c in np.unique(labels)]
    if args.save_raster:
        with open(args.save_raster, "w", encoding="utf-8") as fh:
            for row in raster.labels:
                fh.write(",".join(str(int(v)) for v in row) + "\n")
    boundary = extract_boundary(raster)
    report = boundary_report(boundary, objects, (args.ip_min, args.ip_max))
    payload = report.to_dict()
    payload["seed"] = args.seed
    payload["version"] = __version__
    _emit(payload, args.report)
    return EXIT_OK


def _benchmark_cell(spec: ManifoldSpec, method: str, cfg: RunConfig):
    points = gen_manifold(spec)
    if method == "dcf":
        report = dcf_estimate(points, cfg.ip_range, base_target=cfg.base_target)
        return report.m_hat
    if method == "edcf":
        report = edcf_estimate(
            points,
            cfg.ip_range,
            cfg.d_max,
            cfg.base_target,
            _resolve_cache(cfg),
            cfg.noise,
            seed=cfg.seed,
        )
        return report.m_hat
    if method == "twonn":
        return twonn_estimate(points)
    if method == "mle":
        return mle_estimate(points, cfg.k)
    raise DimgridError(f"unknown method {method!r}")


def cmd_benchmark(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    cfg = RunConfig(
        method="",
        ip_min=args.ip_min,
        ip_max=args.ip_max,
        base_target=args.base_target,
        d_max=args.dmax,
        seed=args.seed,
        engine="auto",
        noise=args.noise if args.pass_noise else None,
        cache_path=args.cache,
        cache_readonly=False,
        k=args.k,
    )
    cells = []
    for size in sizes:
        suite = desk_suite(size, args.noise, args.seed)
        for method in methods:
            for spec in suite:
                cells.append((size, method, spec))
    jobs = args.jobs if args.jobs > 0 else (os.cpu_count() or 1)
    jobs = min(jobs, len(cells)) if cells else 1
    # cells carry independent seeds, so scheduling cannot change any result;
    # map() keeps submission order
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            estimates = list(pool.map(
                _benchmark_cell,
                (spec for _, _, spec in cells),
                (method for _, method, _ in cells),
                repeat(cfg),
            ))
    else:
        estimates = [_benchmark_cell(spec, method, cfg) for _, method, spec in cells]
    detail_rows = []
    grouped = {}
    for (size, method, spec), estimate in zip(cells, estimates):
        detail_rows.append(
            (spec.generator, spec.intrinsic_dim, spec.ambient_dim,
             size, args.noise, method, estimate)
        )
        grouped.setdefault((size, method), []).append(
            float(estimate) - spec.intrinsic_dim
        )
    summary = []
    for size in sizes:
        for method in methods:
            errors = np.asarray(grouped[(size, method)])
            exact = np.mean(np.round(errors) == 0) * 100.0
            summary.append(
                (method, size, args.noise,
                 float(np.mean(np.abs(errors))), float(np.mean(errors)), exact)
            )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("manifold,m_true,d,n,noise,method,estimate\n")
            for row in detail_rows:
                fh.write(",".join(str(v) for v in row) + "\n")
    print("method,n,noise,mae,bias,exact_pct")
    for method, size, noise, mae, bias, exact in summary:
        print(f"{method},{size},{noise},{mae:.4f},{bias:.4f},{exact:.1f}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="dimgrid", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="estimate intrinsic dimension of a CSV cloud")
    est.add_argument("--in", dest="infile", required=True)
    est.add_argument("--method", choices=("edcf", "dcf", "twonn", "mle"), default="edcf")
    est.add_argument("--ip-min", type=float, default=None)
    est.add_argument("--ip-max", type=float, default=None)
    est.add_argument("--base-target", type=float, default=DEFAULT_BASE_TARGET)
    est.add_argument("--dmax", type=int, default=DEFAULT_D_MAX)
    est.add_argument("--noise", type=float, default=None,
                     help="known noise sigma; skips the internal estimate")
    est.add_argument("--engine", choices=("auto", "hash", "pairwise"), default="auto")
    est.add_argument("--cache", default=None,
                     help=f"anchor cache path (or set ${CACHE_ENV_VAR})")
    est.add_argument("--cache-readonly", action="store_true")
    est.add_argument("--k", type=int, default=20, help="neighbor order for mle")
    est.add_argument("--seed", type=int, default=0)
    est.add_argument("--header", action="store_true", help="CSV has a header row")
    est.add_argument("--out", default=None)
    est.set_defaults(func=cmd_estimate)

    bnd = sub.add_parser("bounds", help="print the exact bound table for an ambient dimension")
    bnd.add_argument("--ambient", type=int, required=True)
    bnd.add_argument("--json", action="store_true")
    bnd.add_argument("--out", default=None)
    bnd.set_defaults(func=cmd_bounds)

    cal = sub.add_parser("calibrate", help="generate reference anchors into the cache")
    cal.add_argument("--d", type=int, required=True, help="ambient dimension of the data")
    cal.add_argument("--dmax", type=int, required=True)
    cal.add_argument("--n", type=int, required=True, help="point count of the data")
    cal.add_argument("--noise", type=float, default=0.0)
    cal.add_argument("--ip-min", type=float, default=None)
    cal.add_argument("--ip-max", type=float, default=None)
    cal.add_argument("--base-target", type=float, default=DEFAULT_BASE_TARGET)
    cal.add_argument("--cache", default=None)
    cal.add_argument("--seed", type=int, default=0)
    cal.add_argument("--out", default=None)
    cal.set_defaults(func=cmd_calibrate)

    gen = sub.add_parser("generate", help="write a synthetic dataset to CSV")
    gen.add_argument("--dataset", required=True)
    gen.add_argument("--n", type=int, default=1000,
                     help="points (per class for labeled datasets)")
    gen.add_argument("--noise", type=float, default=0.0)
    gen.add_argument("--intrinsic", type=int, default=None)
    gen.add_argument("--ambient", type=int, default=None)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    bdy = sub.add_parser("boundary", help="extract and measure a decision boundary")
    bdy.add_argument("--train", default=None,
                     help="labeled CSV (label in the last column)")
    bdy.add_argument("--raster", default=None,
                     help="externally produced integer label raster CSV")
    bdy.add_argument("--extent", type=float, nargs=4,
                     default=(0.0, 1.0, 0.0, 1.0),
                     metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    bdy.add_argument("--k", type=int, default=5)
    bdy.add_argument("--resolution", type=int, default=512)
    bdy.add_argument("--ip-min", type=float, default=50.0)
    bdy.add_argument("--ip-max", type=float, default=100.0)
    bdy.add_argument("--header", action="store_true")
    bdy.add_argument("--save-raster", default=None)
    bdy.add_argument("--report", default=None)
    bdy.add_argument("--seed", type=int, default=0)
    bdy.set_defaults(func=cmd_boundary)

    ben = sub.add_parser("benchmark", help="run the estimator suite over the manifold grid")
    ben.add_argument("--suite", choices=("desk",), default="desk")
    ben.add_argument("--sizes", default="1000")
    ben.add_argument("--noise", type=float, default=0.0)
    ben.add_argument("--methods", default="edcf,dcf,twonn,mle")
    ben.add_argument("--ip-min", type=float, default=None)
    ben.add_argument("--ip-max", type=float, default=None)
    ben.add_argument("--base-target", type=float, default=DEFAULT_BASE_TARGET)
    ben.add_argument("--dmax", type=int, default=DEFAULT_D_MAX)
    ben.add_argument("--k", type=int, default=20)
    ben.add_argument("--jobs", type=int, default=0,
                     help="workers across suite cells (0 = all cores)")
    ben.add_argument("--pass-noise", action="store_true",
                     help="hand the generator noise level to edcf instead of estimating")
    ben.add_argument("--cache", default=None)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--out", default=None)
    ben.set_defaults(func=cmd_benchmark)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "generate":
        args.noise_given = (argv is not None and "--noise" in argv) or (
            argv is None and "--noise" in sys.argv
        )
    try:
        return args.func(args)
    except (FileNotFoundError, PermissionError, IsADirectoryError) as exc:
        print(f"dimgrid: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"dimgrid: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DimgridError, ValueError) as exc:
        print(f"dimgrid: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
