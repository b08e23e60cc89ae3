import { csvParseRows } from "d3-dsv";

export type FigureKind = "bures-curve" | "gvp";

/** Parsed numeric table: header row plus one number[] per data row. */
export interface Table {
  columns: string[];
  rows: number[][];
}

/** Exact header each figure kind requires, in column order. */
export const EXPECTED_COLUMNS: Record<FigureKind, string[]> = {
  "bures-curve": ["C", "E_G/(1/2)", "E_B/(2−√2)", "E_Gr/(1/√2)"],
  gvp: ["a", "E_F", "E_R", "ℰ"],
};

export function isFigureKind(value: string): value is FigureKind {
  return value === "bures-curve" || value === "gvp";
}

/**
 * Parse a figure CSV and validate it against the kind's column contract.
 * Comment lines starting with '#' are skipped. Throws on an empty file,
 * a header mismatch, a ragged row, or any cell that is not a finite number.
 */
export function parseFigureCsv(text: string, kind: FigureKind): Table {
  const body = text
    .split("\n")
    .filter((line) => !line.startsWith("#"))
    .join("\n");
  const raw = csvParseRows(body).filter((row) => row.length > 1 || row[0] !== "");
  if (raw.length === 0) {
    throw new Error("empty CSV");
  }
  const expected = EXPECTED_COLUMNS[kind];
  const columns = raw[0];
  if (columns.length !== expected.length || expected.some((c, i) => columns[i] !== c)) {
    throw new Error(
      `header mismatch for kind ${kind}: expected "${expected.join(",")}", got "${columns.join(",")}"`,
    );
  }
  if (raw.length === 1) {
    throw new Error("CSV has a header but no data rows");
  }
  const rows = raw.slice(1).map((cells, i) => {
    if (cells.length !== expected.length) {
      throw new Error(`row ${i + 2} has ${cells.length} fields, expected ${expected.length}`);
    }
    return cells.map((cell) => {
      const value = Number(cell);
      if (cell.trim() === "" || !Number.isFinite(value)) {
        throw new Error(`row ${i + 2}: cannot parse "${cell}" as a number`);
      }
      return value;
    });
  });
  return { columns, rows };
}
