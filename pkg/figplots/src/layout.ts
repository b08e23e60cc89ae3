import { ticks } from "d3-array";
import type { FigureKind, Table } from "./csv.js";

export const WIDTH = 960;
export const HEIGHT = 600;
export const MARGIN = { top: 48, right: 24, bottom: 60, left: 76 };

/** Padding applied to both axis ranges, as a fraction of the data extent. */
export const AXIS_PADDING = 0.02;

/** Dash pattern in pixels along the path; empty means a solid stroke. */
export interface CurveStyle {
  label: string;
  dash: number[];
}

const DOTTED = [1, 5];
const DASHED = [7, 5];

/**
 * Line style per data column. The gvp styles follow the source figures:
 * E_F dotted, E_R solid, the lower bound dashed. The normalized-measure
 * curves get the same three styles in column order.
 */
export const CURVE_STYLES: Record<FigureKind, CurveStyle[]> = {
  "bures-curve": [
    { label: "E_G/(1/2)", dash: [] },
    { label: "E_B/(2−√2)", dash: DASHED },
    { label: "E_Gr/(1/√2)", dash: DOTTED },
  ],
  gvp: [
    { label: "E_F", dash: DOTTED },
    { label: "E_R", dash: [] },
    { label: "ℰ", dash: DASHED },
  ],
};

export const KIND_LABELS: Record<FigureKind, { title: string; x: string; y: string }> = {
  "bures-curve": {
    title: "Distance measures vs concurrence, each normalized to its maximum",
    x: "C",
    y: "E / E(C=1)",
  },
  gvp: {
    title: "Formation, relative entropy, and its fidelity lower bound",
    x: "a",
    y: "entanglement",
  },
};

export interface Layout {
  xDomain: [number, number];
  yDomain: [number, number];
  xTicks: number[];
  yTicks: number[];
  x: (value: number) => number;
  y: (value: number) => number;
}

function padded(lo: number, hi: number): [number, number] {
  const pad = hi > lo ? (hi - lo) * AXIS_PADDING : 0.5;
  return [lo - pad, hi + pad];
}

/** Axis ranges from the data extents, plus pixel maps and tick positions. */
export function computeLayout(table: Table): Layout {
  let xLo = Infinity;
  let xHi = -Infinity;
  let yLo = Infinity;
  let yHi = -Infinity;
  for (const row of table.rows) {
    xLo = Math.min(xLo, row[0]);
    xHi = Math.max(xHi, row[0]);
    for (let j = 1; j < row.length; j++) {
      yLo = Math.min(yLo, row[j]);
      yHi = Math.max(yHi, row[j]);
    }
  }
  const xDomain = padded(xLo, xHi);
  const yDomain = padded(yLo, yHi);
  const x = (v: number) =>
    MARGIN.left + ((v - xDomain[0]) / (xDomain[1] - xDomain[0])) * (WIDTH - MARGIN.left - MARGIN.right);
  const y = (v: number) =>
    HEIGHT - MARGIN.bottom - ((v - yDomain[0]) / (yDomain[1] - yDomain[0])) * (HEIGHT - MARGIN.top - MARGIN.bottom);
  return {
    xDomain,
    yDomain,
    xTicks: ticks(xDomain[0], xDomain[1], 6),
    yTicks: ticks(yDomain[0], yDomain[1], 6),
    x,
    y,
  };
}

/** Pixel polyline for data column j (1-based relative to the x column). */
export function curvePoints(table: Table, layout: Layout, j: number): Array<[number, number]> {
  return table.rows.map((row) => [layout.x(row[0]), layout.y(row[j])]);
}

/** Tick label without float noise (0.30000000000000004 -> "0.3"). */
export function formatTick(value: number): string {
  return String(Number(value.toPrecision(12)));
}
