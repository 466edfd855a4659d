/**
 * Node bindings for the uzmorph morphological analyzer.
 *
 * This is a thin wrapper around the installed `uzmorph` command line tool
 * (`pip install` the Python package first). All analysis happens in the
 * Python engine; the wrapper feeds tokens to `uzmorph batch` over stdin,
 * parses the structured-text blocks it prints, and exposes the same
 * analyze / stem / lemma surface as the Python library.
 */

import { spawnSync } from "node:child_process";

/** One ending segment: its surface string and the feature it carries. */
export interface Segment {
  surface: string;
  feature: string;
}

/** One analysis record, field for field what the HTTP service returns per token. */
export interface Analysis {
  token: string;
  stem: string;
  lemma: string;
  pos: string;
  ending: string;
  features: string[];
  segments: Segment[];
  rendered: string;
}

/** A token the engine rejected, with its error code (e.g. NonAlphabetGrapheme). */
export interface TokenError {
  token: string;
  error: string;
}

export type BatchResult = Analysis | TokenError;

export function isTokenError(result: BatchResult): result is TokenError {
  return "error" in result;
}

export class UzMorphError extends Error {
  constructor(message: string, readonly code?: string) {
    super(message);
    this.name = "UzMorphError";
  }
}

export interface AnalyzerOptions {
  /** Executable to run. Defaults to $UZMORPH_BIN, then "uzmorph" on PATH. */
  command?: string;
  /** Lexicon data directory, passed through as --data. Defaults to the CLI's own resolution. */
  dataDir?: string;
}

export class Analyzer {
  private readonly command: string;
  private readonly dataDir?: string;

  constructor(options: AnalyzerOptions = {}) {
    this.command = options.command ?? process.env.UZMORPH_BIN ?? "uzmorph";
    this.dataDir = options.dataDir;
  }

  /**
   * Analyze a batch of tokens in one subprocess call.
   *
   * Output preserves input order. A token the engine rejects yields a
   * TokenError entry instead of aborting the batch, mirroring the CLI
   * and the HTTP service.
   */
  batch(tokens: string[], pos?: string): BatchResult[] {
    if (tokens.length === 0) {
      return [];
    }
    for (const token of tokens) {
      // one line per token is the framing contract with `uzmorph batch`
      if (token.trim() === "" || /[\r\n]/.test(token)) {
        throw new UzMorphError(`token must be a non-empty single line: ${JSON.stringify(token)}`);
      }
    }

    const argv: string[] = [];
    if (this.dataDir !== undefined) {
      argv.push("--data", this.dataDir);
    }
    argv.push("batch", "-", "--format", "structured-text");
    if (pos !== undefined) {
      argv.push("--pos", pos);
    }

    const proc = spawnSync(this.command, argv, {
      input: tokens.join("\n") + "\n",
      encoding: "utf8",
      maxBuffer: 64 * 1024 * 1024,
    });
    if (proc.error) {
      throw new UzMorphError(`failed to run ${this.command}: ${proc.error.message}`);
    }
    if (proc.status !== 0 && proc.status !== 1) {
      // 1 means some tokens failed and is reported per token below
      throw new UzMorphError(
        `${this.command} exited with code ${proc.status}: ${proc.stderr.trim()}`
      );
    }

    const results = parseStructuredText(proc.stdout);
    if (results.length !== tokens.length) {
      throw new UzMorphError(
        `expected ${tokens.length} results, got ${results.length}: ${proc.stderr.trim()}`
      );
    }
    return results;
  }

  /** Analyze one token. Throws UzMorphError if the engine rejects it. */
  analyze(token: string, pos?: string): Analysis {
    const [result] = this.batch([token], pos);
    if (isTokenError(result)) {
      throw new UzMorphError(`${result.token}: ${result.error}`, result.error);
    }
    return result;
  }

  stem(token: string): string {
    return this.analyze(token).stem;
  }

  lemma(token: string): string {
    return this.analyze(token).lemma;
  }
}

/** Parse the structured-text output of `uzmorph batch` into records, one per token. */
function parseStructuredText(stdout: string): BatchResult[] {
  const results: BatchResult[] = [];
  for (const block of stdout.split("\n\n")) {
    if (block.trim() === "") {
      continue;
    }
    const fields = new Map<string, string>();
    for (const line of block.split("\n")) {
      const sep = line.indexOf(": ");
      if (sep >= 0) {
        fields.set(line.slice(0, sep), line.slice(sep + 2));
      } else if (line.endsWith(":")) {
        fields.set(line.slice(0, -1), "");
      }
    }
    const token = fields.get("token");
    if (token === undefined) {
      throw new UzMorphError(`unparseable output block: ${JSON.stringify(block)}`);
    }
    const error = fields.get("error");
    if (error !== undefined) {
      results.push({ token, error });
      continue;
    }
    results.push({
      token,
      stem: fields.get("stem") ?? "",
      lemma: fields.get("lemma") ?? "",
      pos: fields.get("pos") ?? "",
      ending: fields.get("ending") ?? "",
      features: splitList(fields.get("features") ?? "", ","),
      segments: splitList(fields.get("segments") ?? "", " ").map(parseSegment),
      rendered: fields.get("rendered") ?? "",
    });
  }
  return results;
}

function splitList(value: string, separator: string): string[] {
  return value === "" ? [] : value.split(separator);
}

function parseSegment(item: string): Segment {
  const sep = item.indexOf(":");
  return { surface: item.slice(0, sep), feature: item.slice(sep + 1) };
}

/**
 * Serialize batch results to the exact tab-separated text
 * `uzmorph batch --format tsv` prints: one line per token,
 * token / stem / lemma / pos / ending / comma-joined features.
 * Rejected tokens keep their line with the trailing fields empty.
 */
export function toTsv(results: BatchResult[]): string {
  let out = "";
  for (const result of results) {
    if (isTokenError(result)) {
      out += `${result.token}\t\t\t\t\t\n`;
    } else {
      out += [
        result.token,
        result.stem,
        result.lemma,
        result.pos,
        result.ending,
        result.features.join(","),
      ].join("\t") + "\n";
    }
  }
  return out;
}

const shared = new Analyzer();

/** Analyze one token with the default analyzer. */
export function analyze(token: string, pos?: string): Analysis {
  return shared.analyze(token, pos);
}

/** Surface stem of one token. */
export function stem(token: string): string {
  return shared.stem(token);
}

/** Dictionary form of one token. */
export function lemma(token: string): string {
  return shared.lemma(token);
}
