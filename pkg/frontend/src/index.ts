/** Node bindings for the fitgraph landscape-analysis toolkit.
 *
 * Everything goes through the CLI's stable external interfaces: variant
 * CSVs in, binary snapshots for the graph handle, JSON reports out.  Input
 * arrays are converted once at the CSV boundary; handles are immutable and
 * every call spawns an independent subprocess, so nothing here blocks the
 * event loop or shares state across concurrent analyses.
 */

import { mkdtemp, rm, writeFile } from "node:fs/promises";
import { readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { CliError, CliOptions, runCli } from "./cli.js";
import { SnapshotHeader, readSnapshotHeader } from "./snapshot.js";

export { CliError, CliOptions } from "./cli.js";
export { SnapshotHeader, readSnapshotHeader, parseSnapshotHeader } from "./snapshot.js";

export type AlphabetPreset = "dna" | "rna" | "protein" | "binary" | "infer";

export const FEATURE_KEYS = [
  "phi_lo", "rs_ratio", "rho_a", "gamma", "nfc",
  "eps_mag", "eps_sign", "eps_reci", "eps_pos", "eps_neg",
  "i_id", "eps_dr", "eps_ic", "eps_pairwise_r2",
  "fdc", "alpha_go", "bfc_acc", "bfc_greedy", "phi_ee", "eta",
] as const;

export type FeatureKey = (typeof FEATURE_KEYS)[number];

/** One analysis report: 20 feature values (null = undefined) + diagnostics. */
export type FeatureReport = Record<FeatureKey, number | null> & {
  node_count: number;
  edge_count: number;
  completeness: number;
  n_local_optima: number;
  global_tie_count: number;
  global_optimum: string;
  mean_acc_path: number;
  sigma_used: number;
  eps_tol_used: number;
  n_walks: number;
  walk_length: number;
  seed: number;
  n_squares_total: number | null;
  n_squares_epistatic: number | null;
  flags: Record<string, string>;
};

export interface AnalyzeOptions {
  features?: FeatureKey[] | "all";
  epsTol?: number;
  sigma?: number;
  walks?: number;
  walkLength?: number;
  seed?: number;
  maxOptima?: number;
  maxFitNodes?: number;
}

export interface FromArraysOptions {
  alphabet?: AlphabetPreset;
  delimiter?: string;
  variance?: number[];
  cli?: CliOptions;
}

export interface GenerateConfig {
  model: "additive" | "hoc" | "rmf" | "nk" | "eggbox";
  n: number;
  m?: number;
  k?: number;
  nkNeighborhood?: "random" | "adjacent";
  mu?: number;
  sigmaA?: number;
  sigmaHoc?: number;
  base?: number;
  amplitude?: number;
  seed?: number;
}

export interface WalkOptions {
  method?: "greedy" | "stochastic";
  runs?: number;
  seed?: number;
}

export interface WalkRun {
  start: string;
  endpoint: string;
  endpoint_fitness: number;
  percentile: number;
}

export interface WalkResult {
  method: string;
  runs: number;
  seed: number;
  mean_percentile: number;
  per_run: WalkRun[];
}

function csvCell(value: string): string {
  return /[",\n]/.test(value) ? `"${value.replaceAll('"', '""')}"` : value;
}

function analyzeArgs(options: AnalyzeOptions): string[] {
  const args: string[] = [];
  if (options.features && options.features !== "all") {
    args.push("--features", options.features.join(","));
  }
  if (options.epsTol !== undefined) args.push("--eps-tol", String(options.epsTol));
  if (options.sigma !== undefined) args.push("--sigma", String(options.sigma));
  if (options.walks !== undefined) args.push("--walks", String(options.walks));
  if (options.walkLength !== undefined) args.push("--walk-length", String(options.walkLength));
  if (options.seed !== undefined) args.push("--seed", String(options.seed));
  if (options.maxOptima !== undefined) args.push("--max-optima", String(options.maxOptima));
  if (options.maxFitNodes !== undefined) args.push("--max-fit-nodes", String(options.maxFitNodes));
  return args;
}

/** Immutable handle to a built landscape graph, backed by a snapshot file. */
export class BoundLandscape {
  private constructor(
    private readonly workdir: string,
    public readonly snapshotPath: string,
    private readonly header: SnapshotHeader,
    private readonly cli?: CliOptions,
  ) {}

  get nodeCount(): number {
    return this.header.nodeCount;
  }

  get edgeCount(): number {
    return this.header.edgeCount;
  }

  get completeness(): number {
    return this.header.nodeCount / this.header.totalSpaceSize;
  }

  get alphabets(): string[][] {
    return this.header.alphabets.map((a) => [...a]);
  }

  /** Compute features; identical keys and values to the CLI JSON report. */
  async analyze(options: AnalyzeOptions = {}): Promise<FeatureReport> {
    const out = join(this.workdir, `report-${Date.now()}-${Math.random().toString(36).slice(2)}.json`);
    await runCli(
      ["analyze", "--graph", this.snapshotPath, ...analyzeArgs(options), "--out", out],
      this.cli,
    );
    return JSON.parse(readFileSync(out, "utf8")) as FeatureReport;
  }

  /** Batches of adaptive walks from random starts. */
  async runDe(options: WalkOptions = {}): Promise<WalkResult> {
    const stdout = await runCli(
      [
        "walk",
        "--graph", this.snapshotPath,
        "--method", options.method ?? "greedy",
        "--runs", String(options.runs ?? 100),
        "--seed", String(options.seed ?? 0),
      ],
      this.cli,
    );
    return JSON.parse(stdout) as WalkResult;
  }

  /** Remove the handle's working directory (snapshot and reports). */
  async dispose(): Promise<void> {
    await rm(this.workdir, { recursive: true, force: true });
  }

  static async fromSnapshotFile(
    path: string,
    cli?: CliOptions,
  ): Promise<BoundLandscape> {
    const header = await readSnapshotHeader(path);
    const workdir = await mkdtemp(join(tmpdir(), "fitgraph-"));
    return new BoundLandscape(workdir, path, header, cli);
  }

  static async buildFromCsv(
    csvPath: string,
    alphabet: AlphabetPreset,
    delimiter: string | undefined,
    cli: CliOptions | undefined,
  ): Promise<BoundLandscape> {
    const workdir = await mkdtemp(join(tmpdir(), "fitgraph-"));
    const snapshotPath = join(workdir, "landscape.bin");
    const args = ["build", "--input", csvPath, "--alphabet", alphabet, "--out", snapshotPath];
    if (delimiter) args.push("--delimiter", delimiter);
    await runCli(args, cli);
    const header = await readSnapshotHeader(snapshotPath);
    return new BoundLandscape(workdir, snapshotPath, header, cli);
  }
}

/** Build a landscape from parallel sequence/fitness arrays.
 *
 * Validation (length mismatches, duplicates with conflicting fitness,
 * non-finite values) happens in the engine and surfaces as CliError.
 */
export async function fromArrays(
  sequences: string[],
  fitness: number[],
  options: FromArraysOptions = {},
): Promise<BoundLandscape> {
  if (sequences.length !== fitness.length) {
    throw new RangeError(
      `sequences (${sequences.length}) and fitness (${fitness.length}) lengths differ`,
    );
  }
  if (sequences.length === 0) {
    throw new RangeError("no variants supplied");
  }
  if (options.variance && options.variance.length !== sequences.length) {
    throw new RangeError("variance array length differs from sequences");
  }
  const workdir = await mkdtemp(join(tmpdir(), "fitgraph-in-"));
  const csvPath = join(workdir, "variants.csv");
  const hasVar = options.variance !== undefined;
  const lines = [hasVar ? "sequence,fitness,variance" : "sequence,fitness"];
  for (let i = 0; i < sequences.length; i++) {
    const row = [csvCell(sequences[i]), String(fitness[i])];
    if (hasVar) row.push(String(options.variance![i]));
    lines.push(row.join(","));
  }
  await writeFile(csvPath, lines.join("\n") + "\n", "utf8");
  try {
    return await BoundLandscape.buildFromCsv(
      csvPath,
      options.alphabet ?? "infer",
      options.delimiter,
      options.cli,
    );
  } finally {
    await rm(workdir, { recursive: true, force: true });
  }
}

/** Emit a synthetic landscape (CSV + snapshot) and return its handle. */
export async function generate(
  config: GenerateConfig,
  cli?: CliOptions,
): Promise<{ landscape: BoundLandscape; csvPath: string }> {
  const workdir = await mkdtemp(join(tmpdir(), "fitgraph-gen-"));
  const csvPath = join(workdir, "landscape.csv");
  const args = [
    "generate",
    "--model", config.model,
    "--n", String(config.n),
    "--seed", String(config.seed ?? 0),
    "--out", csvPath,
  ];
  if (config.m !== undefined) args.push("--m", String(config.m));
  if (config.k !== undefined) args.push("--k", String(config.k));
  if (config.nkNeighborhood) args.push("--nk-neighborhood", config.nkNeighborhood);
  if (config.mu !== undefined) args.push("--mu", String(config.mu));
  if (config.sigmaA !== undefined) args.push("--sigma-a", String(config.sigmaA));
  if (config.sigmaHoc !== undefined) args.push("--sigma-hoc", String(config.sigmaHoc));
  if (config.base !== undefined) args.push("--base", String(config.base));
  if (config.amplitude !== undefined) args.push("--amplitude", String(config.amplitude));
  await runCli(args, cli);
  const landscape = await BoundLandscape.buildFromCsv(csvPath, "infer", undefined, cli);
  return { landscape, csvPath };
}

/** One-call convenience: arrays in, feature report out. */
export async function analyze(
  sequences: string[],
  fitness: number[],
  options: FromArraysOptions & AnalyzeOptions = {},
): Promise<FeatureReport> {
  const landscape = await fromArrays(sequences, fitness, options);
  try {
    return await landscape.analyze(options);
  } finally {
    await landscape.dispose();
  }
}

/** One-call convenience: arrays in, adaptive-walk batch out. */
export async function runDe(
  sequences: string[],
  fitness: number[],
  options: FromArraysOptions & WalkOptions = {},
): Promise<WalkResult> {
  const landscape = await fromArrays(sequences, fitness, options);
  try {
    return await landscape.runDe(options);
  } finally {
    await landscape.dispose();
  }
}
