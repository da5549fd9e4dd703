/**
 * Deterministic SVG line charts. No timestamps, no randomness, fixed
 * styling; the same input always serializes to the same bytes.
 */

export interface Series {
  label: string;
  color: string;
  x: number[];
  y: number[];
}

export interface PanelSpec {
  yLabel: string;
  xLabel: string;
  series: Series[];
  xLim?: [number, number];
  yLim?: [number, number];
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
] as const;

const WIDTH = 760;
const PANEL_HEIGHT = 280;
const LEGEND_HEIGHT = 26;
const MARGIN = { top: 14, right: 18, bottom: 44, left: 72 };

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Pixel coordinates with fixed precision so output bytes are stable. */
function px(value: number): string {
  return value.toFixed(2);
}

interface Extent {
  lo: number;
  hi: number;
}

function dataExtent(values: readonly number[][]): Extent {
  let lo = Infinity;
  let hi = -Infinity;
  for (const arr of values) {
    for (const v of arr) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (lo === Infinity) {
    lo = 0;
    hi = 1;
  }
  if (lo === hi) {
    // flat data still needs a visible band
    lo -= 0.5;
    hi += 0.5;
  }
  return { lo, hi };
}

function padExtent(e: Extent, fraction: number): Extent {
  const pad = (e.hi - e.lo) * fraction;
  return { lo: e.lo - pad, hi: e.hi + pad };
}

/** Round tick positions: steps of 1, 2, or 5 times a power of ten. */
export function ticks(lo: number, hi: number, target = 5): number[] {
  const span = hi - lo;
  const raw = span / Math.max(1, target);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  }
  const out: number[] = [];
  const first = Math.ceil(lo / step) * step;
  for (let i = 0; ; i++) {
    const t = first + i * step;
    if (t > hi + step * 1e-9) break;
    out.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return out;
}

/** Format a tick so labels carry just the digits the step needs. */
export function tickLabel(value: number, step: number): string {
  const decimals = Math.max(0, -Math.floor(Math.log10(step) + 1e-9));
  if (decimals > 6 || Math.abs(value) >= 1e7) {
    return value.toExponential(2);
  }
  return value.toFixed(decimals);
}

function scale(extent: Extent, rangeLo: number, rangeHi: number): (v: number) => number {
  const k = (rangeHi - rangeLo) / (extent.hi - extent.lo);
  return (v) => rangeLo + (v - extent.lo) * k;
}

function renderPanel(panel: PanelSpec, index: number, top: number): string {
  const plotLeft = MARGIN.left;
  const plotRight = WIDTH - MARGIN.right;
  const plotTop = top + MARGIN.top;
  const plotBottom = top + PANEL_HEIGHT - MARGIN.bottom;

  const xExtent = panel.xLim
    ? { lo: panel.xLim[0], hi: panel.xLim[1] }
    : dataExtent(panel.series.map((s) => s.x));
  const yExtent = panel.yLim
    ? { lo: panel.yLim[0], hi: panel.yLim[1] }
    : padExtent(dataExtent(panel.series.map((s) => s.y)), 0.06);
  const sx = scale(xExtent, plotLeft, plotRight);
  const sy = scale(yExtent, plotBottom, plotTop);

  const parts: string[] = [`<g class="panel">`];
  parts.push(
    `<rect x="${px(plotLeft)}" y="${px(plotTop)}" width="${px(plotRight - plotLeft)}" ` +
      `height="${px(plotBottom - plotTop)}" fill="#ffffff" stroke="#333333" stroke-width="1"/>`,
  );

  const xTicks = ticks(xExtent.lo, xExtent.hi);
  const xStep = xTicks.length > 1 ? (xTicks[1] as number) - (xTicks[0] as number) : 1;
  for (const t of xTicks) {
    const gx = px(sx(t));
    parts.push(
      `<line x1="${gx}" y1="${px(plotTop)}" x2="${gx}" y2="${px(plotBottom)}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${gx}" y="${px(plotBottom + 16)}" font-size="11" ` +
        `text-anchor="middle" fill="#333333">${tickLabel(t, xStep)}</text>`,
    );
  }
  const yTicks = ticks(yExtent.lo, yExtent.hi);
  const yStep = yTicks.length > 1 ? (yTicks[1] as number) - (yTicks[0] as number) : 1;
  for (const t of yTicks) {
    const gy = px(sy(t));
    parts.push(
      `<line x1="${px(plotLeft)}" y1="${gy}" x2="${px(plotRight)}" y2="${gy}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${px(plotLeft - 6)}" y="${px(sy(t) + 4)}" font-size="11" ` +
        `text-anchor="end" fill="#333333">${tickLabel(t, yStep)}</text>`,
    );
  }

  const clipId = `plot-${index}`;
  parts.push(
    `<clipPath id="${clipId}"><rect x="${px(plotLeft)}" y="${px(plotTop)}" ` +
      `width="${px(plotRight - plotLeft)}" height="${px(plotBottom - plotTop)}"/></clipPath>`,
  );
  for (const s of panel.series) {
    const points: string[] = [];
    for (let i = 0; i < s.x.length; i++) {
      points.push(`${px(sx(s.x[i] as number))},${px(sy(s.y[i] as number))}`);
    }
    parts.push(
      `<polyline clip-path="url(#${clipId})" points="${points.join(" ")}" ` +
        `fill="none" stroke="${s.color}" stroke-width="1.5"/>`,
    );
  }

  parts.push(
    `<text x="${px((plotLeft + plotRight) / 2)}" y="${px(plotBottom + 34)}" ` +
      `font-size="13" text-anchor="middle" fill="#000000">${escapeXml(panel.xLabel)}</text>`,
    `<text x="${px(plotLeft - 52)}" y="${px((plotTop + plotBottom) / 2)}" font-size="13" ` +
      `text-anchor="middle" fill="#000000" transform="rotate(-90 ${px(plotLeft - 52)} ` +
      `${px((plotTop + plotBottom) / 2)})">${escapeXml(panel.yLabel)}</text>`,
  );
  parts.push(`</g>`);
  return parts.join("\n");
}

function renderLegend(entries: Series[], top: number): string {
  const parts: string[] = [`<g class="legend">`];
  let cursor = MARGIN.left;
  for (const entry of entries) {
    const mid = top + LEGEND_HEIGHT / 2;
    parts.push(
      `<line x1="${px(cursor)}" y1="${px(mid)}" x2="${px(cursor + 22)}" y2="${px(mid)}" ` +
        `stroke="${entry.color}" stroke-width="2"/>`,
      `<text x="${px(cursor + 27)}" y="${px(mid + 4)}" font-size="12" ` +
        `fill="#000000">${escapeXml(entry.label)}</text>`,
    );
    cursor += 27 + 8 * entry.label.length + 24;
  }
  parts.push(`</g>`);
  return parts.join("\n");
}

/** Serialize stacked panels plus one legend row into an SVG document. */
export function renderFigure(panels: PanelSpec[], legend: Series[]): string {
  const height = panels.length * PANEL_HEIGHT + (legend.length > 0 ? LEGEND_HEIGHT : 0) + 8;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${height}" ` +
      `viewBox="0 0 ${WIDTH} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect x="0" y="0" width="${WIDTH}" height="${height}" fill="#ffffff"/>`,
  ];
  panels.forEach((panel, i) => {
    parts.push(renderPanel(panel, i, i * PANEL_HEIGHT));
  });
  if (legend.length > 0) {
    parts.push(renderLegend(legend, panels.length * PANEL_HEIGHT));
  }
  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}
