/**
 * Binding equivalence acceptance: over the full bundled fixture corpus,
 * binding outputs (token ids, cleaned+normalized JSON, diagnostics) must be
 * byte/id-identical to direct CLI runs on the same files.
 */

import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { basename, join } from "node:path";
import { beforeAll, describe, expect, it } from "vitest";

import { cleanNormalize, decodeTokens, encodeFile, lintJson } from "../src/index.js";
import { runCli, throwOnFailure } from "../src/runner.js";
import { corpusFiles, makeCorpusDir, readTokenIds } from "./helpers.js";

const CORPUS_SIZE = 200;

let corpusDir: string;
let files: string[];
let refTokDir: string;
let refNormDir: string;
let refLint: Record<string, unknown[]>;

beforeAll(() => {
  corpusDir = makeCorpusDir(CORPUS_SIZE);
  files = corpusFiles(corpusDir);
  expect(files).toHaveLength(CORPUS_SIZE);

  // Reference outputs from direct, batched CLI runs.
  refTokDir = mkdtempSync(join(tmpdir(), "ref-tok-"));
  throwOnFailure(runCli(["tokenize", corpusDir, "--out-dir", refTokDir]));

  const refCleanDir = mkdtempSync(join(tmpdir(), "ref-clean-"));
  throwOnFailure(runCli(["clean", corpusDir, "--out-dir", refCleanDir]));
  refNormDir = mkdtempSync(join(tmpdir(), "ref-norm-"));
  throwOnFailure(
    runCli(["normalize", refCleanDir, "--canvas", "512", "--time-range", "60", "--out-dir", refNormDir]),
  );

  const lintRun = runCli(["lint", "--json", corpusDir]);
  refLint = JSON.parse(lintRun.stdout);
});

describe("binding equivalence on the fixture corpus", () => {
  it("token ids are id-identical to CLI tokenize", () => {
    for (const file of files) {
      const stem = basename(file, ".json");
      const cliIds = readTokenIds(join(refTokDir, `${stem}.tok`));
      const bindingIds = encodeFile(readFileSync(file, "utf-8"));
      expect(bindingIds, stem).toEqual(cliIds);
    }
  });

  it("cleaned+normalized JSON is byte-identical to CLI clean|normalize", () => {
    for (const file of files) {
      const stem = basename(file, ".json");
      const cliText = readFileSync(join(refNormDir, `${stem}.clean.norm.json`), "utf-8");
      const bindingText = cleanNormalize(readFileSync(file, "utf-8"), 512, 60);
      expect(bindingText, stem).toBe(cliText);
    }
  });

  it("diagnostics agree with CLI lint --json", () => {
    const byName: Record<string, unknown[]> = {};
    for (const [path, records] of Object.entries(refLint)) {
      byName[basename(path)] = records;
    }
    for (const file of files) {
      const bindingRecords = lintJson(readFileSync(file, "utf-8"));
      expect(bindingRecords, basename(file)).toEqual(byName[basename(file)]);
    }
  });

  it("decode(encode(x)) stays id-exact and reparses", () => {
    for (const file of files.filter((_, i) => i % 8 === 0)) {
      const text = readFileSync(file, "utf-8");
      const ids = encodeFile(text);
      const restored = decodeTokens(ids);
      expect(() => JSON.parse(restored)).not.toThrow();
      expect(encodeFile(restored), basename(file)).toEqual(ids);
    }
  });
});
