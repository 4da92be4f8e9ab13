import { mkdtemp, rm } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { ArrayView, assertView } from "./arrayview.js";
import { readPointsCsv, writePointsCsv } from "./csv.js";
import { CliOptions, runCli } from "./runner.js";

export type Method = "edcf" | "dcf" | "twonn" | "mle";
export type Engine = "auto" | "hash" | "pairwise";

export interface EstimateOptions extends CliOptions {
  method?: Method;
  ipMin?: number;
  ipMax?: number;
  baseTarget?: number;
  dMax?: number;
  /** Known noise sigma; skips the core's internal estimate. */
  noise?: number;
  engine?: Engine;
  cachePath?: string;
  cacheReadonly?: boolean;
  /** Neighbor order for mle. */
  k?: number;
  seed?: number;
}

/** Mirrors the core's estimate report verbatim; keys are not renamed. */
export interface EstimateResult {
  method: string;
  m_hat: number;
  weights?: number[];
  cf?: number;
  spacing?: number;
  achieved_ip?: number;
  d_max?: number;
  noise?: number;
  raw_estimate: number | null;
  low_confidence?: boolean;
  runtime_s: number;
  seed: number;
  version: string;
  input: string;
}

export interface BoundRow {
  m: number;
  lower: string;
  middle: string;
  upper: string;
}

export interface CalibrateOptions extends CliOptions {
  noise?: number;
  ipMin?: number;
  ipMax?: number;
  baseTarget?: number;
  cachePath?: string;
  seed?: number;
}

export interface CalibrateResult {
  key: {
    d: number;
    d_max: number;
    n_bucket: number;
    noise_bucket: number;
    ip_target: number | null;
  };
  anchors: number[];
  from_cache: boolean;
  cache_path: string | null;
  seed: number;
  version: string;
}

export interface GenerateOptions extends CliOptions {
  n?: number;
  noise?: number;
  intrinsic?: number;
  ambient?: number;
  seed?: number;
}

export interface GenerateSummary {
  dataset: string;
  n: number;
  d: number;
  labeled: boolean;
  noise: number | null;
  seed: number;
  version: string;
}

export interface GenerateResult {
  points: ArrayView;
  labels: Int32Array | null;
  summary: GenerateSummary;
}

function pushFlags(args: string[], flags: Record<string, number | string | undefined>): void {
  for (const [flag, value] of Object.entries(flags)) {
    if (value !== undefined) args.push(flag, String(value));
  }
}

async function withScratchDir<T>(fn: (dir: string) => Promise<T>): Promise<T> {
  const dir = await mkdtemp(join(tmpdir(), "dimgrid-"));
  try {
    return await fn(dir);
  } finally {
    await rm(dir, { recursive: true, force: true });
  }
}

/**
 * Estimate the intrinsic dimension of an in-memory cloud.
 *
 * The result is byte-identical to running the core's estimate command on
 * the same points and seed; this layer only moves data.
 */
export async function estimate(points: ArrayView, opts: EstimateOptions = {}): Promise<EstimateResult> {
  assertView(points);
  return withScratchDir(async (dir) => {
    const csv = join(dir, "points.csv");
    await writePointsCsv(csv, points);
    const args = ["estimate", "--in", csv];
    pushFlags(args, {
      "--method": opts.method,
      "--ip-min": opts.ipMin,
      "--ip-max": opts.ipMax,
      "--base-target": opts.baseTarget,
      "--dmax": opts.dMax,
      "--noise": opts.noise,
      "--engine": opts.engine,
      "--cache": opts.cachePath,
      "--k": opts.k,
      "--seed": opts.seed,
    });
    if (opts.cacheReadonly) args.push("--cache-readonly");
    return JSON.parse(await runCli(args, opts)) as EstimateResult;
  });
}

/** Exact bound table for ambient dimension n; decimal strings as emitted by the core. */
export async function bounds(n: number, opts: CliOptions = {}): Promise<BoundRow[]> {
  if (!Number.isInteger(n) || n < 0) {
    throw new RangeError(`ambient dimension must be a non-negative integer, got ${n}`);
  }
  const payload = JSON.parse(await runCli(["bounds", "--ambient", String(n), "--json"], opts));
  return payload.rows as BoundRow[];
}

/** Generate (or fetch cached) reference anchors for a workload shape. */
export async function calibrate(
  d: number,
  dMax: number,
  n: number,
  opts: CalibrateOptions = {}
): Promise<CalibrateResult> {
  const args = ["calibrate"];
  pushFlags(args, {
    "--d": d,
    "--dmax": dMax,
    "--n": n,
    "--noise": opts.noise,
    "--ip-min": opts.ipMin,
    "--ip-max": opts.ipMax,
    "--base-target": opts.baseTarget,
    "--cache": opts.cachePath,
    "--seed": opts.seed,
  });
  return JSON.parse(await runCli(args, opts)) as CalibrateResult;
}

/** Produce a synthetic dataset in memory; labeled sets carry an Int32Array. */
export async function generate(dataset: string, opts: GenerateOptions = {}): Promise<GenerateResult> {
  return withScratchDir(async (dir) => {
    const out = join(dir, "data.csv");
    const args = ["generate", "--dataset", dataset, "--out", out];
    pushFlags(args, {
      "--n": opts.n,
      "--noise": opts.noise,
      "--intrinsic": opts.intrinsic,
      "--ambient": opts.ambient,
      "--seed": opts.seed,
    });
    const summary = JSON.parse(await runCli(args, opts)) as GenerateSummary;
    const { points, labels } = await readPointsCsv(out, summary.labeled);
    return { points, labels, summary };
  });
}
