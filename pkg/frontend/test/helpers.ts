import { execFileSync } from "node:child_process";
import { mkdtempSync, readdirSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

/** Write the toolkit's bundled fixture corpus to a scratch directory. */
export function makeCorpusDir(n: number): string {
  const dir = mkdtempSync(join(tmpdir(), "lottietok-corpus-"));
  execFileSync("python3", [
    "-c",
    `from lottietok.fixtures import write_corpus; write_corpus(${JSON.stringify(dir)}, n=${n})`,
  ]);
  return dir;
}

export function corpusFiles(dir: string): string[] {
  return readdirSync(dir)
    .filter((name) => name.endsWith(".json"))
    .sort()
    .map((name) => join(dir, name));
}

export function readTokenIds(tokPath: string): number[] {
  const lines = readFileSync(tokPath, "utf-8").trim().split("\n");
  return lines[1].trim().split(/\s+/).map(Number);
}

export const EMPTY_LAYERS_JSON = JSON.stringify({
  v: "5.12.1",
  fr: 25.0,
  ip: 0.0,
  op: 105.0,
  w: 512.0,
  h: 512.0,
  layers: [],
  assets: [],
  markers: [],
});
