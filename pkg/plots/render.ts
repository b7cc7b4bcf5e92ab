#!/usr/bin/env npx tsx
/**
 * fastkin figure renderer — CSV artifacts in, standalone SVG out.
 *
 * Usage:
 *   tsx render.ts profile        --var rho --out sod.svg run_a/snapshot_000225.csv hofks=run_b/snapshot_000225.csv
 *   tsx render.ts convergence    --out conv.svg out/convergence_fks.csv out/convergence_hofks.csv
 *   tsx render.ts radial-scatter --var rho --center 6,6 --span 10 --out radial.svg out/snapshot_000040.csv
 *   tsx render.ts isolines       --var rho --levels 14 --out iso.svg out/snapshot_000053.csv
 *
 * Inputs may be bare paths (labelled by their run directory) or explicit
 * label=path pairs. Exit codes: 0 written, 1 unreadable/ill-formed input
 * (the offending column is named), 2 usage.
 */

import { PlotJob, PlotKind, render, UsageError, VARIABLES } from "./src/figures.js";
import { SchemaError } from "./src/csv.js";

const KINDS: PlotKind[] = ["profile", "convergence", "radial-scatter", "isolines"];

function usage(): string {
  return (
    `usage: render.ts <${KINDS.join("|")}> [options] input.csv [more.csv | label=path ...]\n` +
    `  --var NAME      variable to plot: ${VARIABLES.join(", ")} (default rho; ignored by convergence)\n` +
    "  --out PATH      output SVG path (required)\n" +
    "  --title TEXT    figure title override\n" +
    "  --center X,Y    radial-scatter: reference point\n" +
    "  --span L        radial-scatter: domain period for wrapped distances\n" +
    "  --levels N      isolines: contour count (default 12)"
  );
}

function parseArgs(argv: string[]): PlotJob {
  const [kind, ...rest] = argv;
  if (!kind || !(KINDS as string[]).includes(kind)) {
    throw new UsageError(`missing or unknown plot kind '${kind ?? ""}'\n${usage()}`);
  }
  const job: PlotJob = { kind: kind as PlotKind, inputs: [], variable: "rho", output: "" };
  for (let i = 0; i < rest.length; i++) {
    const arg = rest[i];
    const next = () => {
      if (i + 1 >= rest.length) throw new UsageError(`${arg} needs a value`);
      return rest[++i];
    };
    if (arg === "--var") job.variable = next();
    else if (arg === "--out") job.output = next();
    else if (arg === "--title") job.title = next();
    else if (arg === "--levels") job.levels = parseInt(next(), 10);
    else if (arg === "--span") job.span = parseFloat(next());
    else if (arg === "--center") {
      const parts = next().split(",").map(parseFloat);
      if (parts.length !== 2 || parts.some((p) => !Number.isFinite(p))) {
        throw new UsageError("--center expects two numbers: cx,cy");
      }
      job.center = [parts[0], parts[1]];
    } else if (arg.startsWith("--")) {
      throw new UsageError(`unknown option ${arg}\n${usage()}`);
    } else {
      job.inputs.push(arg);
    }
  }
  if (!job.output) throw new UsageError(`--out is required\n${usage()}`);
  return job;
}

function main(argv: string[]): number {
  try {
    const out = render(parseArgs(argv));
    console.log(`SVG → ${out}`);
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`usage error: ${err.message}`);
      return 2;
    }
    const msg = err instanceof Error ? err.message : String(err);
    console.error(`error: ${msg}`);
    return 1;
  }
}

process.exit(main(process.argv.slice(2)));
