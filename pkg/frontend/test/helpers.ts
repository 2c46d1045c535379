import { mkdtemp, readFile, rm } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { runCli } from "../src/cli.js";

export interface CsvData {
  sequences: string[];
  fitness: number[];
}

/** Parse a two-column variant CSV written by the engine. */
export function parseLandscapeCsv(text: string): CsvData {
  const lines = text.trim().split(/\r?\n/);
  const header = lines[0].split(",");
  if (header[0] !== "sequence" || header[1] !== "fitness") {
    throw new Error(`unexpected CSV header: ${lines[0]}`);
  }
  const sequences: string[] = [];
  const fitness: number[] = [];
  for (const line of lines.slice(1)) {
    const [seq, fit] = line.split(",");
    sequences.push(seq);
    fitness.push(Number(fit));
  }
  return { sequences, fitness };
}

export interface TempWorkspace {
  dir: string;
  cleanup: () => Promise<void>;
}

export async function workspace(): Promise<TempWorkspace> {
  const dir = await mkdtemp(join(tmpdir(), "fitgraph-test-"));
  return { dir, cleanup: () => rm(dir, { recursive: true, force: true }) };
}

/** Run `generate` through the CLI and return the CSV path and contents. */
export async function generateCsv(
  dir: string,
  args: string[],
  name: string,
): Promise<{ path: string; data: CsvData }> {
  const path = join(dir, name);
  await runCli(["generate", ...args, "--out", path]);
  const data = parseLandscapeCsv(await readFile(path, "utf8"));
  return { path, data };
}

export async function cliAnalyze(
  dir: string,
  inputArgs: string[],
  seed: number,
  name: string,
): Promise<Record<string, unknown>> {
  const out = join(dir, name);
  await runCli(["analyze", ...inputArgs, "--seed", String(seed), "--out", out]);
  return JSON.parse(await readFile(out, "utf8"));
}
