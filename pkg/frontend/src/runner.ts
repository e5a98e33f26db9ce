import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

/** Error raised for any file-level failure, carrying the primary error code
 * (the toolkit's exception class name, e.g. "SchemaViolation"). */
export class CliError extends Error {
  constructor(
    public readonly code: string,
    message: string,
  ) {
    super(`${code}: ${message}`);
    this.name = "CliError";
  }
}

export interface RunResult {
  stdout: string;
  stderr: string;
  status: number;
}

/** Resolve the CLI command; override with LOTTIETOK_CLI="python3 -m lottietok.cli". */
export function cliCommand(): string[] {
  const env = process.env.LOTTIETOK_CLI;
  if (env && env.trim()) {
    return env.trim().split(/\s+/);
  }
  return ["lottietok"];
}

export function runCli(args: string[]): RunResult {
  const [cmd, ...pre] = cliCommand();
  const proc = spawnSync(cmd, [...pre, ...args], {
    encoding: "utf-8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (proc.error) {
    throw new CliError("CliUnavailable", `${cmd}: ${proc.error.message}`);
  }
  return { stdout: proc.stdout ?? "", stderr: proc.stderr ?? "", status: proc.status ?? -1 };
}

/** Summary lines are "STATUS<TAB>path<TAB>detail"; FAIL details start with the
 * primary error class name followed by ": ". */
export function throwOnFailure(result: RunResult): void {
  for (const line of result.stdout.split("\n")) {
    if (!line.startsWith("FAIL\t")) {
      continue;
    }
    const detail = line.split("\t").slice(2).join("\t");
    const sep = detail.indexOf(": ");
    const code = sep > 0 ? detail.slice(0, sep) : "CliError";
    const message = sep > 0 ? detail.slice(sep + 2) : detail;
    throw new CliError(code, message);
  }
  if (result.status !== 0) {
    throw new CliError("CliError", result.stderr.trim() || result.stdout.trim() || "nonzero exit");
  }
}

/** Run fn with a private scratch directory, always cleaning it up. */
export function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "lottietok-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}
