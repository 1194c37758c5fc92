#!/usr/bin/env node
/**
 * Render a qamnet result CSV to PNG.
 *
 * Usage:
 *   qamnet-plots --input grid.csv --kind heatmap --output grid.png
 *   qamnet-plots --input sweep.csv --kind lines --output sweep.png \
 *                [--x total_levels|activation_energy] [--title "..."]
 */

import { parseArgs } from "node:util";
import { SchemaError } from "./csv.js";
import { renderHeatmap } from "./heatmap.js";
import { renderEquivalenceLines } from "./lines.js";
import type { PlotSpec } from "./types.js";

export function run(argv: string[]): number {
  let values;
  try {
    values = parseArgs({
      args: argv,
      options: {
        input: { type: "string", short: "i" },
        kind: { type: "string", short: "k" },
        output: { type: "string", short: "o" },
        x: { type: "string" },
        title: { type: "string" },
      },
      strict: true,
    }).values;
  } catch (err) {
    process.stderr.write(`usage error: ${(err as Error).message}\n`);
    return 2;
  }

  const { input, kind, output, x, title } = values;
  if (!input || !output || (kind !== "heatmap" && kind !== "lines")) {
    process.stderr.write(
      "usage: qamnet-plots --input <csv> --kind heatmap|lines --output <png> [--x <column>] [--title <text>]\n",
    );
    return 2;
  }
  if (x !== undefined && x !== "total_levels" && x !== "activation_energy") {
    process.stderr.write(`usage error: --x must be total_levels or activation_energy, got ${x}\n`);
    return 2;
  }

  const spec: PlotSpec = { input, kind, output, title, xColumn: x };
  try {
    const info = kind === "heatmap" ? renderHeatmap(spec) : renderEquivalenceLines(spec);
    process.stdout.write(JSON.stringify(info) + "\n");
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 1;
    }
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("qamnet-plots")) {
  process.exit(run(process.argv.slice(2)));
}
