import { readFileSync, writeFileSync } from "node:fs";
import { parseFigureCsv, type FigureKind } from "./csv.js";
import { renderPng } from "./png.js";
import { renderSvg } from "./svg.js";

export interface FigureSpec {
  csvPath: string;
  kind: FigureKind;
  outPath: string;
  title?: string;
}

/** Base path with any .svg/.png extension stripped. */
export function outputBase(outPath: string): string {
  return outPath.replace(/\.(svg|png)$/i, "");
}

/**
 * Render one figure from its CSV: a vector and a raster file side by side.
 * Pure in the CSV bytes, so re-rendering reproduces both files exactly.
 */
export function render(spec: FigureSpec): { svgPath: string; pngPath: string } {
  const text = readFileSync(spec.csvPath, "utf8");
  const table = parseFigureCsv(text, spec.kind);
  const base = outputBase(spec.outPath);
  const svgPath = `${base}.svg`;
  const pngPath = `${base}.png`;
  writeFileSync(svgPath, renderSvg(table, spec.kind, spec.title));
  writeFileSync(pngPath, renderPng(table, spec.kind));
  return { svgPath, pngPath };
}
