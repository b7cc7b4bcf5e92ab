/**
 * The four figure kinds rendered from solver CSV artifacts:
 *
 *   profile        — 1D snapshot overlay of one variable across schemes
 *   convergence    — log-log L1/Linf error panels with slope-1/2 references
 *   radial-scatter — 2D snapshot variable against distance from a center
 *   isolines       — 2D snapshot contour panel
 *
 * Rendering is read-only over inputs; each job writes exactly its own
 * output file.
 */

import { writeFileSync } from "fs";
import { basename, dirname } from "path";

import { column, labels, readTable, requireColumns, SchemaError, Table } from "./csv.js";
import { document, legend, LegendEntry, Panel, PALETTE } from "./chart.js";
import { contourLevels, marchingSquares } from "./marching.js";

export type PlotKind = "profile" | "convergence" | "radial-scatter" | "isolines";

export interface PlotJob {
  kind: PlotKind;
  /** inputs as given: either a path or an explicit label=path pair */
  inputs: string[];
  variable: string;
  output: string;
  title?: string;
  /** radial-scatter: center point */
  center?: [number, number];
  /** radial-scatter: domain period for minimal-image distances */
  span?: number;
  /** isolines: number of contour levels */
  levels?: number;
}

export class UsageError extends Error {}

export const VARIABLES = ["rho", "ux", "uy", "theta"];

export function render(job: PlotJob): string {
  if (!VARIABLES.includes(job.variable)) {
    throw new UsageError(`unknown variable '${job.variable}' (choose from ${VARIABLES.join(", ")})`);
  }
  if (job.inputs.length === 0) throw new UsageError("no input files given");
  switch (job.kind) {
    case "profile": return profile(job);
    case "convergence": return convergence(job);
    case "radial-scatter": return radialScatter(job);
    case "isolines": return isolines(job);
    default: throw new UsageError(`unknown plot kind '${job.kind}'`);
  }
}

// ---------------------------------------------------------------------------
// Inputs
// ---------------------------------------------------------------------------

interface NamedTable {
  label: string;
  table: Table;
}

function readInputs(inputs: string[]): NamedTable[] {
  return inputs.map((arg) => {
    const eq = arg.indexOf("=");
    if (eq > 0 && !arg.slice(0, eq).includes("/")) {
      return { label: arg.slice(0, eq), table: readTable(arg.slice(eq + 1)) };
    }
    // label falls back to the run directory, which names the scheme in the
    // driver's convergence/bench layouts, then to the file stem
    const dir = basename(dirname(arg));
    const label = dir === "" || dir === "." ? basename(arg, ".csv") : dir;
    return { label, table: readTable(arg) };
  });
}

function finite(values: number[], path: string, col: string): number[] {
  if (values.some((v) => !Number.isFinite(v))) {
    throw new SchemaError(path, col, "contains non-finite values");
  }
  return values;
}

// ---------------------------------------------------------------------------
// profile
// ---------------------------------------------------------------------------

function profile(job: PlotJob): string {
  const series = readInputs(job.inputs);
  let xMin = Infinity, xMax = -Infinity, yMin = Infinity, yMax = -Infinity;
  const data = series.map(({ label, table }) => {
    requireColumns(table, ["x", job.variable]);
    const xs = finite(column(table, "x"), table.path, "x");
    const ys = finite(column(table, job.variable), table.path, job.variable);
    xMin = Math.min(xMin, ...xs); xMax = Math.max(xMax, ...xs);
    yMin = Math.min(yMin, ...ys); yMax = Math.max(yMax, ...ys);
    return { label, xs, ys };
  });
  const pad = (yMax - yMin || 1) * 0.06;
  const W = 520, H = 330;
  const panel = new Panel({
    x0: 62, y0: 34, width: W - 82, height: H - 84,
    xRange: [xMin, xMax], yRange: [yMin - pad, yMax + pad],
    xLabel: "x", yLabel: job.variable,
  });
  const entries: LegendEntry[] = [];
  data.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    panel.polyline(s.xs, s.ys, color);
    entries.push({ label: s.label, color });
  });
  let body = panel.frame();
  body += legend(W - 150, 40, entries);
  const svg = document(W, H, job.title ?? `${job.variable} along x`, body);
  writeFileSync(job.output, svg);
  return job.output;
}

// ---------------------------------------------------------------------------
// convergence
// ---------------------------------------------------------------------------

function convergence(job: PlotJob): string {
  const tables = readInputs(job.inputs);
  // group rows by the scheme column so one merged or several per-scheme
  // files render identically
  const bySch = new Map<string, { mesh: number[]; eps1: number[]; epsinf: number[] }>();
  for (const { table } of tables) {
    requireColumns(table, ["scheme", "mesh", "eps1", "epsinf"]);
    const sch = labels(table, "scheme");
    const mesh = finite(column(table, "mesh"), table.path, "mesh");
    const eps1 = finite(column(table, "eps1"), table.path, "eps1");
    const epsinf = finite(column(table, "epsinf"), table.path, "epsinf");
    sch.forEach((name, i) => {
      const g = bySch.get(name) ?? { mesh: [], eps1: [], epsinf: [] };
      g.mesh.push(mesh[i]); g.eps1.push(eps1[i]); g.epsinf.push(epsinf[i]);
      bySch.set(name, g);
    });
  }
  const meshes = [...bySch.values()].flatMap((g) => g.mesh);
  const allErr = [...bySch.values()].flatMap((g) => [...g.eps1, ...g.epsinf]);
  const xRange: [number, number] = [Math.min(...meshes) / 1.15, Math.max(...meshes) * 1.15];
  const yRange: [number, number] = [Math.min(...allErr) / 2.5, Math.max(...allErr) * 2.5];

  const W = 640, H = 320;
  const pw = 235, ph = H - 92;
  const entries: LegendEntry[] = [];
  let body = "";
  (["eps1", "epsinf"] as const).forEach((which, ip) => {
    const panel = new Panel({
      x0: 62 + ip * (pw + 70), y0: 42, width: pw, height: ph,
      xRange, yRange, xLog: true, yLog: true,
      xLabel: "cells per axis", yLabel: which === "eps1" ? "relative L1 error" : "relative Linf error",
      title: which === "eps1" ? "L1" : "Linf",
      xTicks: [...new Set(meshes)].sort((p, q) => p - q),
    });
    let i = 0;
    for (const [name, g] of bySch) {
      const color = PALETTE[i % PALETTE.length];
      panel.polyline(g.mesh, g[which], color, 1.3);
      panel.markers(g.mesh, g[which], color);
      if (ip === 0) entries.push({ label: name, color });
      i++;
    }
    // reference slopes 1 and 2 anchored at the first series' last point
    const first = [...bySch.values()][0];
    const xa = first.mesh[first.mesh.length - 1];
    const ya = first[which][first.mesh.length - 1];
    for (const slope of [1, 2]) {
      const ref = (m: number) => ya * Math.pow(m / xa, -slope);
      panel.polyline([xRange[0], xRange[1]], [ref(xRange[0]), ref(xRange[1])], "#999", 0.9, slope === 1 ? "5,3" : "2,2");
      if (ip === 0) entries.push({ label: `slope ${slope}`, color: "#999", dash: slope === 1 ? "5,3" : "2,2" });
    }
    body += panel.frame();
  });
  body += legend(W - 118, H - 64, entries);
  const svg = document(W, H, job.title ?? "mesh refinement of the density error", body);
  writeFileSync(job.output, svg);
  return job.output;
}

// ---------------------------------------------------------------------------
// 2D snapshot helpers
// ---------------------------------------------------------------------------

interface Field2d {
  xs: number[];
  ys: number[];
  /** values[i][j] at (xs[i], ys[j]) */
  values: number[][];
  flatX: number[];
  flatY: number[];
  flat: number[];
}

function readField2d(path: string, variable: string): Field2d {
  const table = readTable(path);
  requireColumns(table, ["ix", "iy", "x", "y", variable]);
  const ix = column(table, "ix");
  const iy = column(table, "iy");
  const x = finite(column(table, "x"), path, "x");
  const y = finite(column(table, "y"), path, "y");
  const v = finite(column(table, variable), path, variable);
  const nx = Math.max(...ix) + 1;
  const ny = Math.max(...iy) + 1;
  if (table.rows.length !== nx * ny) {
    throw new SchemaError(path, "ix", `expected ${nx}x${ny} rows, found ${table.rows.length}`);
  }
  const xs: number[] = new Array(nx);
  const ys: number[] = new Array(ny);
  const values: number[][] = Array.from({ length: nx }, () => new Array(ny).fill(NaN));
  for (let r = 0; r < v.length; r++) {
    const i = ix[r], j = iy[r];
    xs[i] = x[r];
    ys[j] = y[r];
    values[i][j] = v[r];
  }
  return { xs, ys, values, flatX: x, flatY: y, flat: v };
}

// ---------------------------------------------------------------------------
// radial-scatter
// ---------------------------------------------------------------------------

function radialScatter(job: PlotJob): string {
  if (job.inputs.length !== 1) throw new UsageError("radial-scatter takes exactly one snapshot");
  if (!job.center) throw new UsageError("radial-scatter requires --center cx,cy");
  const [cx, cy] = job.center;
  const f = readField2d(job.inputs[0], job.variable);
  const wrap = (delta: number) => {
    if (!job.span) return delta;
    const m = delta - Math.round(delta / job.span) * job.span;
    return m;
  };
  const r = f.flatX.map((x, i) => Math.hypot(wrap(x - cx), wrap(f.flatY[i] - cy)));
  const rMax = Math.max(...r);
  const vMin = Math.min(...f.flat), vMax = Math.max(...f.flat);
  const pad = (vMax - vMin || 1) * 0.06;
  const W = 520, H = 330;
  const panel = new Panel({
    x0: 62, y0: 34, width: W - 82, height: H - 84,
    xRange: [0, rMax * 1.02], yRange: [vMin - pad, vMax + pad],
    xLabel: `distance from (${cx}, ${cy})`, yLabel: job.variable,
  });
  panel.dots(r, f.flat, PALETTE[0]);
  const svg = document(W, H, job.title ?? `${job.variable} against radius`, panel.frame());
  writeFileSync(job.output, svg);
  return job.output;
}

// ---------------------------------------------------------------------------
// isolines
// ---------------------------------------------------------------------------

function isolines(job: PlotJob): string {
  if (job.inputs.length !== 1) throw new UsageError("isolines takes exactly one snapshot");
  const f = readField2d(job.inputs[0], job.variable);
  const vMin = Math.min(...f.flat), vMax = Math.max(...f.flat);
  const n = job.levels ?? 12;
  const W = 480, H = 450;
  const panel = new Panel({
    x0: 62, y0: 40, width: W - 102, height: H - 110,
    xRange: [f.xs[0], f.xs[f.xs.length - 1]],
    yRange: [f.ys[0], f.ys[f.ys.length - 1]],
    xLabel: "x", yLabel: "y", equalAspect: true,
  });
  const lerp = (c0: number[], c1: number[], t: number) =>
    `rgb(${c0.map((a, k) => Math.round(a + (c1[k] - a) * t)).join(",")})`;
  const cold = [67, 97, 238], hot = [230, 57, 70];
  contourLevels(vMin, vMax, n).forEach((level, k) => {
    const segs = marchingSquares(f.xs, f.ys, f.values, level);
    panel.segments(segs, lerp(cold, hot, n === 1 ? 0 : k / (n - 1)));
  });
  let body = panel.frame();
  body += `<text x="${W / 2}" y="${H - 8}" text-anchor="middle" font-size="7" fill="#888">${n} levels, ${job.variable} in [${vMin.toPrecision(4)}, ${vMax.toPrecision(4)}]</text>\n`;
  const svg = document(W, H, job.title ?? `${job.variable} isolines`, body);
  writeFileSync(job.output, svg);
  return job.output;
}
