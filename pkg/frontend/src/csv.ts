/**
 * Result-CSV reading and schema validation.
 *
 * The producer writes floats with Python `repr`, so non-finite values
 * arrive as the tokens `inf` / `-inf` / `nan`; JavaScript's Number()
 * rejects those, hence the explicit token map.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

/** Raised when a CSV is unusable for the requested plot. */
export class SchemaError extends Error {
  readonly missing: string[];

  constructor(message: string, missing: string[] = []) {
    super(message);
    this.name = "SchemaError";
    this.missing = missing;
  }
}

export interface CsvTable {
  columns: string[];
  rows: Record<string, string>[];
}

export function parseFloatToken(token: string): number {
  switch (token) {
    case "inf":
    case "Infinity":
      return Infinity;
    case "-inf":
    case "-Infinity":
      return -Infinity;
    case "nan":
    case "-nan":
      return NaN;
    default: {
      const value = Number(token);
      if (token.trim() === "" || Number.isNaN(value)) {
        throw new SchemaError(`not a number: ${JSON.stringify(token)}`);
      }
      return value;
    }
  }
}

export function readCsv(path: string): CsvTable {
  const text = readFileSync(path, "utf-8");
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  // "Delimiter" is papaparse's auto-detect notice on single-column
  // files, not a parse failure
  const fatal = parsed.errors.filter((e) => e.type !== "Delimiter");
  if (fatal.length > 0) {
    throw new SchemaError(`${path}: malformed CSV (${fatal[0]!.message})`);
  }
  const columns = (parsed.meta.fields ?? []).map((f) => f.trim());
  if (columns.length === 0) {
    throw new SchemaError(`${path}: no header row`);
  }
  return { columns, rows: parsed.data };
}

/**
 * Check that every required column is present (an entry may list
 * alternative spellings; the first present one is chosen) and that the
 * table has at least one data row. Returns the resolved column name per
 * requirement, in order.
 */
export function requireColumns(table: CsvTable, path: string, required: string[][]): string[] {
  const resolved: string[] = [];
  const missing: string[] = [];
  for (const alternatives of required) {
    const found = alternatives.find((name) => table.columns.includes(name));
    if (found === undefined) {
      missing.push(alternatives.join("|"));
    } else {
      resolved.push(found);
    }
  }
  if (missing.length > 0) {
    throw new SchemaError(`${path}: missing required columns: ${missing.join(", ")}`, missing);
  }
  if (table.rows.length === 0) {
    throw new SchemaError(`${path}: no data rows (header only)`);
  }
  return resolved;
}

export function numberColumn(table: CsvTable, column: string): number[] {
  return table.rows.map((row) => parseFloatToken(row[column] ?? ""));
}

export function stringColumn(table: CsvTable, column: string): string[] {
  return table.rows.map((row) => row[column] ?? "");
}
