/**
 * Strict CSV reading for the run artifacts.
 *
 * The producers write plain comma-separated numeric columns with a single
 * header line; trailing `#`-prefixed comment lines (orbit traces carry an
 * invariant footer, the modes table a dominant-wave line) are skipped.
 * Any contract violation reports the offending line or column by name.
 */

import { readFileSync } from "fs";
import { FormatError } from "./errors";

export interface Table {
  columns: string[];
  /** column name -> numeric values, rows in file order */
  data: Map<string, number[]>;
  rows: number;
}

export function readCsv(
  path: string,
  requiredColumns: string[],
  stringColumns: string[] = [],
): Table & { strings: Map<string, string[]> } {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new FormatError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const lines = text.split(/\r?\n/);
  if (lines.length === 0 || lines[0].trim() === "") {
    throw new FormatError(`${path}: empty file`);
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  for (const col of requiredColumns) {
    if (!columns.includes(col)) {
      throw new FormatError(`${path}: missing column '${col}' in header`);
    }
  }
  const data = new Map<string, number[]>(columns.map((c) => [c, []]));
  const strings = new Map<string, string[]>(columns.map((c) => [c, []]));
  let rows = 0;
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "" || line.startsWith("#")) continue;
    const parts = line.split(",");
    if (parts.length < columns.length) {
      throw new FormatError(
        `${path}: line ${i + 1} has ${parts.length} fields, expected ${columns.length}`,
      );
    }
    columns.forEach((col, j) => {
      // status-like columns may contain commas only in the final position;
      // join any surplus fields back into the last column
      const raw =
        j === columns.length - 1 ? parts.slice(j).join(",").trim() : parts[j].trim();
      strings.get(col)!.push(raw);
      if (stringColumns.includes(col)) {
        data.get(col)!.push(NaN);
        return;
      }
      const value = Number(raw);
      if (!Number.isFinite(value) && raw !== "nan" && raw !== "inf") {
        throw new FormatError(
          `${path}: line ${i + 1}, column '${col}': not a number: '${raw}'`,
        );
      }
      data.get(col)!.push(value);
    });
    rows++;
  }
  if (rows === 0) {
    throw new FormatError(`${path}: no data rows`);
  }
  return { columns, data, rows, strings };
}
