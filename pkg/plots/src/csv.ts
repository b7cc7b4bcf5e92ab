/**
 * Reader for the solver's CSV artifacts.
 *
 * Every file starts with a header row naming its columns; all data cells
 * are numeric except that rate columns may be empty on the coarsest mesh
 * (parsed as NaN). Anything else is a schema error that names the column,
 * so a bad path fails loudly instead of plotting garbage.
 */

import { readFileSync } from "fs";

export interface Table {
  path: string;
  columns: string[];
  /** rows[i][k] is column k of data row i */
  rows: number[][];
  /** string cells kept verbatim, for label-like columns (e.g. scheme) */
  raw: string[][];
}

export class SchemaError extends Error {
  constructor(
    public path: string,
    public column: string,
    detail: string
  ) {
    super(`${path}: column '${column}': ${detail}`);
    this.name = "SchemaError";
  }
}

export function readTable(path: string): Table {
  const text = readFileSync(path, "utf-8");
  const lines = text.trim().split("\n");
  if (lines.length < 1 || lines[0].trim() === "") {
    throw new SchemaError(path, "(header)", "file is empty");
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows: number[][] = [];
  const raw: string[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new SchemaError(
        path,
        columns[Math.min(cells.length, columns.length) - 1],
        `row ${i + 1} has ${cells.length} cells, header has ${columns.length}`
      );
    }
    raw.push(cells);
    rows.push(
      cells.map((cell, k) => {
        const t = cell.trim();
        if (t === "") return NaN; // blank rate on the coarsest mesh
        const v = Number(t);
        if (!Number.isFinite(v) && !/^(nan|[-+]?inf(inity)?)$/i.test(t)) {
          // non-numeric payload is only legal in known label columns
          if (LABEL_COLUMNS.has(columns[k])) return NaN;
          throw new SchemaError(path, columns[k], `row ${i + 1} is not numeric: '${t}'`);
        }
        return v;
      })
    );
  }
  return { path, columns, rows, raw };
}

const LABEL_COLUMNS = new Set(["scheme"]);

export function requireColumns(table: Table, needed: string[]): void {
  for (const name of needed) {
    if (!table.columns.includes(name)) {
      throw new SchemaError(table.path, name, `missing (header: ${table.columns.join(",")})`);
    }
  }
}

export function column(table: Table, name: string): number[] {
  requireColumns(table, [name]);
  const k = table.columns.indexOf(name);
  return table.rows.map((r) => r[k]);
}

export function labels(table: Table, name: string): string[] {
  requireColumns(table, [name]);
  const k = table.columns.indexOf(name);
  return table.raw.map((r) => r[k].trim());
}
