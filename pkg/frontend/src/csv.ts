import { readFileSync } from "node:fs";

export interface Table {
  columns: string[];
  rows: number[][];
}

/**
 * Read one of the fixed-schema scenario CSVs. The files are machine written
 * (no quoting, comma separated, one header line), so a line split is enough.
 */
export function readCsv(path: string): Table {
  const text = readFileSync(path, "utf-8");
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error(`${path}: empty file`);
  }
  const columns = lines[0].split(",");
  if (lines.length === 1) {
    throw new Error(`${path}: no data rows`);
  }
  const rows = lines.slice(1).map((line, i) => {
    const parts = line.split(",").map(Number);
    if (parts.length !== columns.length) {
      throw new Error(`${path}: row ${i + 2} has ${parts.length} fields, expected ${columns.length}`);
    }
    return parts;
  });
  return { columns, rows };
}

/** Extract a named column, with a diagnostic that names the file. */
export function column(table: Table, name: string, path: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new Error(`${path}: missing column '${name}' (has: ${table.columns.join(", ")})`);
  }
  return table.rows.map((row) => row[idx]);
}
