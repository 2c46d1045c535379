import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    testTimeout: 600_000,
    hookTimeout: 600_000,
    env: {
      // drive the engine via the module entry point; override with your own
      // FITGRAPH_CLI (e.g. an installed `fitgraph` script) if preferred
      FITGRAPH_CLI: process.env.FITGRAPH_CLI ?? "python3 -m fitgraph",
    },
  },
});
