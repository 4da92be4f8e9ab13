import { execFile } from "node:child_process";
import { promisify } from "node:util";

const execFileAsync = promisify(execFile);

export interface CliOptions {
  /** Interpreter to spawn; defaults to $DIMGRID_PYTHON, then "python3". */
  python?: string;
  /** Extra environment entries (e.g. DIMGRID_CACHE). */
  env?: Record<string, string>;
}

/**
 * Run one core subcommand and return its stdout.
 *
 * The core's exit taxonomy maps onto host error types: 3 (invalid
 * arguments or data) becomes RangeError, 2 (I/O failure) a plain Error.
 * The work runs in a child process, so the event loop stays free.
 */
export async function runCli(args: string[], opts: CliOptions = {}): Promise<string> {
  const python = opts.python ?? process.env.DIMGRID_PYTHON ?? "python3";
  try {
    const { stdout } = await execFileAsync(python, ["-m", "dimgrid", ...args], {
      env: { ...process.env, ...opts.env },
      maxBuffer: 1 << 26,
    });
    return stdout;
  } catch (err) {
    throw mapError(err);
  }
}

function mapError(err: unknown): unknown {
  const e = err as { code?: number | string; stderr?: string; message?: string };
  const detail = (e.stderr ?? "").trim() || e.message || "dimgrid call failed";
  if (e.code === 3) return new RangeError(detail);
  if (e.code === 2) return new Error(detail);
  return err;
}
