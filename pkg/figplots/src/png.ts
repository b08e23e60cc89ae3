import { PNG } from "pngjs";
import type { FigureKind, Table } from "./csv.js";
import {
  CURVE_STYLES,
  HEIGHT,
  MARGIN,
  WIDTH,
  computeLayout,
  curvePoints,
} from "./layout.js";

/** Supersampling factor: draw at 2x, then box-filter down. */
const SCALE = 2;
const STEP = 0.35;

class Canvas {
  readonly width: number;
  readonly height: number;
  readonly gray: Float64Array;

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.gray = new Float64Array(width * height).fill(1);
  }

  /** Stamp a filled black disk; used as the pen for every stroke. */
  stampDisk(cx: number, cy: number, radius: number): void {
    const r2 = radius * radius;
    const x0 = Math.max(0, Math.floor(cx - radius));
    const x1 = Math.min(this.width - 1, Math.ceil(cx + radius));
    const y0 = Math.max(0, Math.floor(cy - radius));
    const y1 = Math.min(this.height - 1, Math.ceil(cy + radius));
    for (let y = y0; y <= y1; y++) {
      for (let x = x0; x <= x1; x++) {
        const dx = x + 0.5 - cx;
        const dy = y + 0.5 - cy;
        if (dx * dx + dy * dy <= r2) {
          this.gray[y * this.width + x] = 0;
        }
      }
    }
  }
}

/**
 * Stroke a polyline by walking it at sub-pixel steps and stamping the pen
 * wherever the dash phase is in an "on" interval. The phase is carried
 * across segments so dashes flow continuously along the path.
 */
function strokePolyline(
  canvas: Canvas,
  points: Array<[number, number]>,
  width: number,
  dash: number[],
): void {
  const period = dash.reduce((a, b) => a + b, 0);
  const radius = width / 2;
  let phase = 0;
  const penDown = (s: number) => {
    if (period === 0) {
      return true;
    }
    let m = s % period;
    for (let i = 0; i < dash.length; i++) {
      if (m < dash[i]) {
        return i % 2 === 0;
      }
      m -= dash[i];
    }
    return true;
  };
  for (let i = 1; i < points.length; i++) {
    const [ax, ay] = points[i - 1];
    const [bx, by] = points[i];
    const len = Math.hypot(bx - ax, by - ay);
    const steps = Math.max(1, Math.ceil(len / STEP));
    for (let k = 0; k <= steps; k++) {
      const t = k / steps;
      if (penDown(phase + t * len)) {
        canvas.stampDisk(ax + t * (bx - ax), ay + t * (by - ay), radius);
      }
    }
    phase += len;
  }
}

function strokeLine(canvas: Canvas, x0: number, y0: number, x1: number, y1: number, width: number): void {
  strokePolyline(canvas, [[x0, y0], [x1, y1]], width, []);
}

/**
 * Deterministic PNG for a parsed figure table: the same curves, frame,
 * and ticks as the vector output. Text is left to the vector format;
 * the dash styles themselves distinguish the curves.
 */
export function renderPng(table: Table, kind: FigureKind): Buffer {
  const layout = computeLayout(table);
  const canvas = new Canvas(WIDTH * SCALE, HEIGHT * SCALE);
  const plotRight = WIDTH - MARGIN.right;
  const plotBottom = HEIGHT - MARGIN.bottom;

  const frame: Array<[number, number]> = [
    [MARGIN.left, MARGIN.top],
    [plotRight, MARGIN.top],
    [plotRight, plotBottom],
    [MARGIN.left, plotBottom],
    [MARGIN.left, MARGIN.top],
  ];
  strokePolyline(canvas, frame.map(([x, y]) => [x * SCALE, y * SCALE]), SCALE, []);
  for (const t of layout.xTicks) {
    const xp = layout.x(t) * SCALE;
    strokeLine(canvas, xp, plotBottom * SCALE, xp, (plotBottom + 6) * SCALE, SCALE);
  }
  for (const t of layout.yTicks) {
    const yp = layout.y(t) * SCALE;
    strokeLine(canvas, (MARGIN.left - 6) * SCALE, yp, MARGIN.left * SCALE, yp, SCALE);
  }

  for (const [i, style] of CURVE_STYLES[kind].entries()) {
    const pts = curvePoints(table, layout, i + 1).map(
      ([x, y]): [number, number] => [x * SCALE, y * SCALE],
    );
    strokePolyline(canvas, pts, 2 * SCALE, style.dash.map((d) => d * SCALE));
  }

  const png = new PNG({ width: WIDTH, height: HEIGHT });
  for (let y = 0; y < HEIGHT; y++) {
    for (let x = 0; x < WIDTH; x++) {
      let acc = 0;
      for (let sy = 0; sy < SCALE; sy++) {
        for (let sx = 0; sx < SCALE; sx++) {
          acc += canvas.gray[(y * SCALE + sy) * canvas.width + x * SCALE + sx];
        }
      }
      const level = Math.round((acc / (SCALE * SCALE)) * 255);
      const k = (y * WIDTH + x) * 4;
      png.data[k] = level;
      png.data[k + 1] = level;
      png.data[k + 2] = level;
      png.data[k + 3] = 255;
    }
  }
  return PNG.sync.write(png);
}
