import { spawnSync } from "node:child_process";
import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { Analyzer, isTokenError, toTsv } from "../src/index";

const samplePath = fileURLToPath(new URL("fixtures/sample50.txt", import.meta.url));

function sampleTokens(): string[] {
  return readFileSync(samplePath, "utf8")
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line !== "");
}

describe("equivalence with the CLI", () => {
  it("fixture holds exactly 50 distinct tokens", () => {
    const tokens = sampleTokens();
    expect(tokens).toHaveLength(50);
    expect(new Set(tokens).size).toBe(50);
  });

  it("binding output serializes byte-identical to `uzmorph batch --format tsv`", () => {
    const tokens = sampleTokens();

    const cli = spawnSync("uzmorph", ["batch", "-", "--format", "tsv"], {
      input: tokens.join("\n") + "\n",
    });
    expect(cli.error).toBeUndefined();
    expect(cli.status).toBe(0);

    const results = new Analyzer().batch(tokens);
    expect(results).toHaveLength(50);
    expect(results.some(isTokenError)).toBe(false);

    const bound = Buffer.from(toTsv(results), "utf8");
    expect(bound.equals(cli.stdout)).toBe(true);
    console.log(`PASS S1 binding TSV byte-identical to CLI on ${tokens.length} tokens (${bound.length} bytes)`);
  });

  it("rejected tokens keep their line, matching the CLI", () => {
    const tokens = ["kitobda", "daft4r", "uyga"];

    const cli = spawnSync("uzmorph", ["batch", "-", "--format", "tsv"], {
      input: tokens.join("\n") + "\n",
    });
    expect(cli.status).toBe(1);

    const results = new Analyzer().batch(tokens);
    expect(results.map(isTokenError)).toEqual([false, true, false]);
    expect(Buffer.from(toTsv(results), "utf8").equals(cli.stdout)).toBe(true);
  });
});
