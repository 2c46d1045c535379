/** Subprocess plumbing for the landscape-analysis CLI. */

import { execFile } from "node:child_process";
import { promisify } from "node:util";

const execFileAsync = promisify(execFile);

export interface CliOptions {
  /** Command used to launch the CLI; FITGRAPH_CLI overrides, default "fitgraph". */
  command?: string[];
  timeoutMs?: number;
}

export class CliError extends Error {
  constructor(
    message: string,
    public readonly exitCode: number | null,
    public readonly stderr: string,
  ) {
    super(message);
    this.name = "CliError";
  }
}

function resolveCommand(options?: CliOptions): string[] {
  if (options?.command && options.command.length > 0) return options.command;
  const env = process.env.FITGRAPH_CLI;
  if (env && env.trim().length > 0) return env.trim().split(/\s+/);
  return ["fitgraph"];
}

/** Run one CLI subcommand; resolves with stdout, rejects with CliError. */
export async function runCli(
  args: string[],
  options?: CliOptions,
): Promise<string> {
  const [cmd, ...prefix] = resolveCommand(options);
  try {
    const { stdout } = await execFileAsync(cmd, [...prefix, ...args], {
      timeout: options?.timeoutMs ?? 600_000,
      maxBuffer: 256 * 1024 * 1024,
    });
    return stdout;
  } catch (err) {
    const e = err as NodeJS.ErrnoException & {
      code?: number | string;
      stderr?: string;
    };
    const stderr = e.stderr ?? "";
    const exit = typeof e.code === "number" ? e.code : null;
    throw new CliError(
      `fitgraph ${args[0]} failed${exit !== null ? ` (exit ${exit})` : ""}: ${
        stderr.trim() || e.message
      }`,
      exit,
      stderr,
    );
  }
}
