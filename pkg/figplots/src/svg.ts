import type { FigureKind, Table } from "./csv.js";
import {
  CURVE_STYLES,
  HEIGHT,
  KIND_LABELS,
  MARGIN,
  WIDTH,
  computeLayout,
  curvePoints,
  formatTick,
  type CurveStyle,
} from "./layout.js";

const FONT = 'font-family="Helvetica, Arial, sans-serif"';

function px(value: number): string {
  return value.toFixed(2);
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function strokeAttrs(style: CurveStyle): string {
  if (style.dash.length === 0) {
    return "";
  }
  const cap = style.dash[0] <= 1 ? ' stroke-linecap="round"' : "";
  return ` stroke-dasharray="${style.dash.join(" ")}"${cap}`;
}

/** Deterministic standalone SVG for a parsed figure table. */
export function renderSvg(table: Table, kind: FigureKind, title?: string): string {
  const layout = computeLayout(table);
  const labels = KIND_LABELS[kind];
  const styles = CURVE_STYLES[kind];
  const plotRight = WIDTH - MARGIN.right;
  const plotBottom = HEIGHT - MARGIN.bottom;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="26" text-anchor="middle" ${FONT} font-size="17">${escapeXml(title ?? labels.title)}</text>`,
  );

  for (const t of layout.xTicks) {
    const xp = px(layout.x(t));
    parts.push(`<line x1="${xp}" y1="${plotBottom}" x2="${xp}" y2="${plotBottom + 6}" stroke="black"/>`);
    parts.push(
      `<text x="${xp}" y="${plotBottom + 22}" text-anchor="middle" ${FONT} font-size="13">${formatTick(t)}</text>`,
    );
  }
  for (const t of layout.yTicks) {
    const yp = px(layout.y(t));
    parts.push(`<line x1="${MARGIN.left - 6}" y1="${yp}" x2="${MARGIN.left}" y2="${yp}" stroke="black"/>`);
    parts.push(
      `<text x="${MARGIN.left - 10}" y="${yp}" dy="4" text-anchor="end" ${FONT} font-size="13">${formatTick(t)}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotRight - MARGIN.left}" height="${plotBottom - MARGIN.top}" fill="none" stroke="black"/>`,
  );
  parts.push(
    `<text x="${(MARGIN.left + plotRight) / 2}" y="${HEIGHT - 14}" text-anchor="middle" ${FONT} font-size="15">${escapeXml(labels.x)}</text>`,
  );
  parts.push(
    `<text x="22" y="${(MARGIN.top + plotBottom) / 2}" text-anchor="middle" ${FONT} font-size="15" transform="rotate(-90 22 ${(MARGIN.top + plotBottom) / 2})">${escapeXml(labels.y)}</text>`,
  );

  styles.forEach((style, i) => {
    const pts = curvePoints(table, layout, i + 1);
    const d = pts.map(([xp, yp], k) => `${k === 0 ? "M" : "L"}${px(xp)},${px(yp)}`).join("");
    parts.push(`<path d="${d}" fill="none" stroke="black" stroke-width="2"${strokeAttrs(style)}/>`);
  });

  const legendX = MARGIN.left + 16;
  styles.forEach((style, i) => {
    const yp = MARGIN.top + 18 + 22 * i;
    parts.push(
      `<line x1="${legendX}" y1="${yp}" x2="${legendX + 34}" y2="${yp}" stroke="black" stroke-width="2"${strokeAttrs(style)}/>`,
    );
    parts.push(
      `<text x="${legendX + 42}" y="${yp}" dy="4" ${FONT} font-size="14">${escapeXml(style.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
