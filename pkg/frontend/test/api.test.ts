import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import {
  arrayView,
  bounds,
  calibrate,
  estimate,
  fromRows,
  generate,
  readPointsCsv,
} from "../src/index";

const PY = process.env.DIMGRID_PYTHON ?? "python3";

function cli(args: string[], env: Record<string, string> = {}): string {
  const res = spawnSync(PY, ["-m", "dimgrid", ...args], {
    encoding: "utf8",
    env: { ...process.env, ...env },
    maxBuffer: 1 << 26,
  });
  if (res.status !== 0) throw new Error(`cli ${args[0]} failed: ${res.stderr}`);
  return res.stdout;
}

let scratch: string;
let sphereCsv: string;

beforeAll(() => {
  scratch = mkdtempSync(join(tmpdir(), "dimgrid-test-"));
  sphereCsv = join(scratch, "sphere.csv");
  cli([
    "generate", "--dataset", "sphere", "--intrinsic", "2", "--ambient", "3",
    "--n", "1000", "--noise", "0", "--seed", "42", "--out", sphereCsv,
  ]);
});

afterAll(() => {
  rmSync(scratch, { recursive: true, force: true });
});

describe("estimate", () => {
  it("matches the command line bit for bit on the 2-sphere", async () => {
    const ref = JSON.parse(
      cli(["estimate", "--in", sphereCsv, "--method", "edcf", "--seed", "0",
           "--cache", join(scratch, "cache-cli.json")])
    );
    const { points } = await readPointsCsv(sphereCsv);
    const res = await estimate(points, {
      method: "edcf",
      seed: 0,
      cachePath: join(scratch, "cache-node.json"),
    });
    expect(res.m_hat).toBe(2);
    expect(res.m_hat).toBe(ref.m_hat);
    expect(res.weights).toBeDefined();
    expect(res.weights!.length).toBe(ref.weights.length);
    const a = Buffer.from(Float64Array.from(res.weights!).buffer);
    const b = Buffer.from(Float64Array.from(ref.weights).buffer);
    expect(a.equals(b)).toBe(true);
  });

  it("gives a single point dimension zero", async () => {
    const res = await estimate(fromRows([[0.5, 0.5, 0.5]]), { method: "dcf" });
    expect(res.m_hat).toBe(0);
  });

  it("rejects flat buffers without shape", async () => {
    const flat = new Float64Array(6);
    await expect(estimate(flat as never)).rejects.toThrow(TypeError);
  });

  it("rejects shape/buffer mismatches", () => {
    expect(() => arrayView(new Float64Array(5), 2, 3)).toThrow(RangeError);
  });

  it("maps invalid-argument exits to RangeError", async () => {
    const view = fromRows([[0, 0], [1, 1]]);
    await expect(estimate(view, { method: "nope" as never })).rejects.toThrow(RangeError);
  });
});

describe("bounds", () => {
  it("is string-equal to the command line for n=2", async () => {
    const ref = JSON.parse(cli(["bounds", "--ambient", "2", "--json"])).rows;
    const rows = await bounds(2);
    expect(rows).toEqual(ref);
    expect(rows[1]).toEqual({
      m: 1,
      lower: "0.166666666667",
      middle: "0.25",
      upper: "0.666666666667",
    });
  });

  it("handles the zero-dimensional space", async () => {
    expect(await bounds(0)).toEqual([{ m: 0, lower: "1", middle: "1", upper: "1" }]);
  });

  it("returns n+1 rows", async () => {
    expect(await bounds(3)).toHaveLength(4);
  });

  it("rejects negative and fractional n", async () => {
    await expect(bounds(-1)).rejects.toThrow(RangeError);
    await expect(bounds(2.5)).rejects.toThrow(RangeError);
  });
});

describe("calibrate", () => {
  it("creates then reuses cached anchors", async () => {
    const cache = join(scratch, "cache-cal.json");
    const first = await calibrate(3, 3, 500, { noise: 0.01, cachePath: cache, seed: 5 });
    expect(first.from_cache).toBe(false);
    expect(first.anchors).toHaveLength(4);
    expect(first.anchors[0]).toBe(0);
    const second = await calibrate(3, 3, 500, { noise: 0.01, cachePath: cache, seed: 5 });
    expect(second.from_cache).toBe(true);
    expect(second.anchors).toEqual(first.anchors);
  });

  it("honors DIMGRID_CACHE from the environment", async () => {
    const cache = join(scratch, "cache-env.json");
    const res = await calibrate(2, 2, 300, {
      noise: 0,
      seed: 1,
      env: { DIMGRID_CACHE: cache },
    });
    expect(res.cache_path).toBe(cache);
  });
});

describe("generate", () => {
  it("returns an in-memory manifold", async () => {
    const { points, labels, summary } = await generate("helix1d", { n: 200, seed: 1 });
    expect(points.rows).toBe(200);
    expect(points.cols).toBe(3);
    expect(labels).toBeNull();
    expect(summary.labeled).toBe(false);
  });

  it("carries labels for classification sets", async () => {
    const { points, labels } = await generate("ccd", { n: 150, seed: 2 });
    expect(points.rows).toBe(300);
    expect(points.cols).toBe(2);
    expect(labels).not.toBeNull();
    expect(labels!.length).toBe(300);
    expect(new Set(labels!)).toEqual(new Set([1, 2]));
  });

  it("rejects unknown datasets", async () => {
    await expect(generate("mystery")).rejects.toThrow(RangeError);
  });
});
