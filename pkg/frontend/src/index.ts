/**
 * Bindings over the `lottietok` command line for ML data loaders.
 *
 * Each function is a stateless wrapper: inputs are written to a scratch
 * directory, one or two CLI subcommands run on them, and the outputs are
 * read back through the toolkit's documented file formats.  Outputs are
 * byte/id-identical to invoking the CLI directly on the same content.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { CliError, runCli, throwOnFailure, withTempDir } from "./runner.js";

export { CliError } from "./runner.js";

export interface DiagnosticRecord {
  level: number;
  code: string;
  path: string;
  message: string;
  severity: "error" | "warning";
}

export interface TokenizerOptions {
  /** Vocabulary file path; omit for the built-in vocabulary. */
  vocabPath?: string | null;
  /** "builtin" (default) or "external:FILE". */
  textTokenizerId?: string;
}

function tokenizerFlags(opts: TokenizerOptions): string[] {
  const flags: string[] = [];
  if (opts.vocabPath) {
    flags.push("--vocab", opts.vocabPath);
  }
  if (opts.textTokenizerId && opts.textTokenizerId !== "builtin") {
    flags.push("--text-tokenizer", opts.textTokenizerId);
  }
  return flags;
}

function vocabVersionOf(vocabPath?: string | null): string {
  if (!vocabPath) {
    return "1";
  }
  for (const line of readFileSync(vocabPath, "utf-8").split("\n")) {
    if (line.startsWith("version ")) {
      return line.slice("version ".length).trim();
    }
  }
  throw new CliError("SchemaViolation", `vocab file ${vocabPath} has no version record`);
}

function textTokenizerTag(textTokenizerId?: string): string {
  const id = textTokenizerId ?? "builtin";
  if (id === "builtin" || id === "builtin-bytes") {
    return "builtin-bytes";
  }
  if (id.startsWith("external:")) {
    const file = id.slice("external:".length);
    for (const line of readFileSync(file, "utf-8").split("\n")) {
      if (line.startsWith("#texttok ")) {
        return `external:${line.slice("#texttok ".length).trim()}`;
      }
    }
    return "external:external";
  }
  throw new CliError("ValueError", `unknown text tokenizer ${id}`);
}

/** Lottie JSON text -> flat token ids. */
export function encodeFile(jsonText: string, opts: TokenizerOptions = {}): number[] {
  return withTempDir((dir) => {
    const input = join(dir, "input.json");
    writeFileSync(input, jsonText);
    throwOnFailure(runCli(["tokenize", input, "--out-dir", dir, ...tokenizerFlags(opts)]));
    const lines = readFileSync(join(dir, "input.tok"), "utf-8").trim().split("\n");
    return lines[1].trim().split(/\s+/).map(Number);
  });
}

/** Token ids -> canonical Lottie JSON text. */
export function decodeTokens(ids: number[], opts: TokenizerOptions = {}): string {
  return withTempDir((dir) => {
    const header = `#lottie-tok v${vocabVersionOf(opts.vocabPath)} tt=${textTokenizerTag(opts.textTokenizerId)}`;
    const input = join(dir, "input.tok");
    writeFileSync(input, `${header}\n${ids.join(" ")}\n`);
    throwOnFailure(runCli(["detokenize", input, "--out-dir", dir, ...tokenizerFlags(opts)]));
    return readFileSync(join(dir, "input.json"), "utf-8");
  });
}

/** Clean (remove non-parameterizable content) and normalize onto a square
 * canvas and fixed time range; throws CliError("Rejected", ...) for files
 * the cleaner discards. */
export function cleanNormalize(jsonText: string, canvas = 512, timeRange = 60): string {
  return withTempDir((dir) => {
    const input = join(dir, "input.json");
    writeFileSync(input, jsonText);
    throwOnFailure(runCli(["clean", input, "--out-dir", dir]));
    throwOnFailure(
      runCli([
        "normalize",
        join(dir, "input.clean.json"),
        "--canvas",
        String(canvas),
        "--time-range",
        String(timeRange),
        "--out-dir",
        dir,
      ]),
    );
    return readFileSync(join(dir, "input.clean.norm.json"), "utf-8");
  });
}

/** Renderability diagnostics for one document (never throws on findings;
 * a file that cannot be parsed yields a single SchemaViolation record). */
export function lintJson(jsonText: string): DiagnosticRecord[] {
  return withTempDir((dir) => {
    const input = join(dir, "input.json");
    writeFileSync(input, jsonText);
    const result = runCli(["lint", "--json", input]);
    let payload: Record<string, DiagnosticRecord[]>;
    try {
      payload = JSON.parse(result.stdout);
    } catch {
      throw new CliError("CliError", result.stderr.trim() || "lint produced no JSON report");
    }
    const records = payload[input];
    if (records === undefined) {
      throw new CliError("CliError", "lint report missing the input file");
    }
    return records;
  });
}

// Aliases matching the toolkit's operation names.
export const encode_file = encodeFile;
export const decode_tokens = decodeTokens;
export const clean_normalize = cleanNormalize;
export const lint_json = lintJson;
