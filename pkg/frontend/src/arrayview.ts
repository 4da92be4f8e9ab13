/** Contiguous row-major N×d view over 64-bit reals. */
export interface ArrayView {
  data: Float64Array;
  rows: number;
  cols: number;
}

export function arrayView(data: Float64Array | readonly number[], rows: number, cols: number): ArrayView {
  const buf = data instanceof Float64Array ? data : Float64Array.from(data);
  const view = { data: buf, rows, cols };
  assertView(view);
  return view;
}

/** Build a view from nested row arrays. Rows must share one length. */
export function fromRows(rows: readonly (readonly number[])[]): ArrayView {
  if (rows.length === 0) throw new RangeError("need at least one row");
  const cols = rows[0].length;
  const data = new Float64Array(rows.length * cols);
  for (let i = 0; i < rows.length; i++) {
    if (rows[i].length !== cols) {
      throw new RangeError(`row ${i} has length ${rows[i].length}, expected ${cols}`);
    }
    data.set(rows[i], i * cols);
  }
  return { data, rows: rows.length, cols };
}

export function assertView(view: ArrayView): void {
  if (
    view === null ||
    typeof view !== "object" ||
    !(view.data instanceof Float64Array) ||
    typeof view.rows !== "number" ||
    typeof view.cols !== "number"
  ) {
    throw new TypeError(
      "expected an N×d ArrayView {data: Float64Array, rows, cols}; " +
        "flat arrays carry no shape"
    );
  }
  if (!Number.isInteger(view.rows) || !Number.isInteger(view.cols) || view.rows < 1 || view.cols < 1) {
    throw new RangeError(`invalid shape ${view.rows}×${view.cols}`);
  }
  if (view.data.length !== view.rows * view.cols) {
    throw new RangeError(
      `shape ${view.rows}×${view.cols} does not match buffer length ${view.data.length}`
    );
  }
}
