export { ArrayView, arrayView, assertView, fromRows } from "./arrayview.js";
export { CsvPoints, readPointsCsv, writePointsCsv } from "./csv.js";
export { CliOptions, runCli } from "./runner.js";
export {
  BoundRow,
  CalibrateOptions,
  CalibrateResult,
  Engine,
  EstimateOptions,
  EstimateResult,
  GenerateOptions,
  GenerateResult,
  GenerateSummary,
  Method,
  bounds,
  calibrate,
  estimate,
  generate,
} from "./api.js";
