import { readFile, writeFile } from "node:fs/promises";

import { ArrayView, arrayView } from "./arrayview.js";

function fmt(v: number): string {
  // String() is shortest round-trip for doubles; keep the sign of -0
  return Object.is(v, -0) ? "-0" : String(v);
}

export async function writePointsCsv(path: string, view: ArrayView): Promise<void> {
  const lines: string[] = new Array(view.rows);
  for (let i = 0; i < view.rows; i++) {
    const off = i * view.cols;
    const fields: string[] = new Array(view.cols);
    for (let j = 0; j < view.cols; j++) fields[j] = fmt(view.data[off + j]);
    lines[i] = fields.join(",");
  }
  await writeFile(path, lines.join("\n") + "\n", "utf8");
}

export interface CsvPoints {
  points: ArrayView;
  labels: Int32Array | null;
}

/** Read a points CSV; when labeled, the integer label sits in the last column. */
export async function readPointsCsv(path: string, labeled = false): Promise<CsvPoints> {
  const text = await readFile(path, "utf8");
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0) throw new RangeError(`${path}: empty CSV`);
  const width = lines[0].split(",").length;
  const cols = labeled ? width - 1 : width;
  if (cols < 1) throw new RangeError(`${path}: no coordinate columns`);
  const data = new Float64Array(lines.length * cols);
  const labels = labeled ? new Int32Array(lines.length) : null;
  for (let i = 0; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== width) {
      throw new RangeError(`${path}: row ${i} has ${fields.length} fields, expected ${width}`);
    }
    for (let j = 0; j < cols; j++) data[i * cols + j] = Number(fields[j]);
    if (labels) labels[i] = Number(fields[width - 1]);
  }
  return { points: arrayView(data, lines.length, cols), labels };
}
