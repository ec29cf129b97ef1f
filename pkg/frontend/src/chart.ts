/** Canvas scatter rendering and file exports.
 *
 * Region overlays are filled in reverse precedence order so the corner
 * triangles paint over the middle band exactly where classification
 * would claim the point anyway.
 */

import type { Region } from "./analysis.js";

export interface ChartPoint {
  label: string;
  x: number;
  y: number;
  /** Ellipse radii in data units (stddevs); omitted for plain dots. */
  rx?: number;
  ry?: number;
  highlighted?: boolean;
}

export interface ChartOptions {
  xLabel: string;
  yLabel: string;
  /** Fixed data ranges; defaults to padded data extent. */
  xRange?: [number, number];
  yRange?: [number, number];
  /** Draw the five comparison-region backgrounds (unit square). */
  regions?: boolean;
  showLabels?: boolean;
}

const MARGIN = { top: 16, right: 16, bottom: 44, left: 56 };
const POINT_COLOR = "#2563eb";
const HIGHLIGHT_COLOR = "#dc2626";
const ELLIPSE_FILL = "rgba(37, 99, 235, 0.12)";

export const REGION_FILLS: Record<Region, string> = {
  both_moderate: "#f4f4f5",
  both_poorly: "#fecaca",
  both_well: "#bbf7d0",
  alg1_wins: "#bfdbfe",
  alg2_wins: "#fef08a",
};

function extent(values: number[], pad: number): [number, number] {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  if (lo === hi) {
    return [lo - 1, hi + 1];
  }
  const span = hi - lo;
  return [lo - pad * span, hi + pad * span];
}

export function drawScatter(
  canvas: HTMLCanvasElement,
  points: ChartPoint[],
  options: ChartOptions,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    return;
  }
  const width = canvas.width;
  const height = canvas.height;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, width, height);

  const xRange =
    options.xRange ?? extent(points.map((p) => p.x), 0.1);
  const yRange =
    options.yRange ?? extent(points.map((p) => p.y), 0.1);
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const sx = (x: number) =>
    MARGIN.left + ((x - xRange[0]) / (xRange[1] - xRange[0])) * plotW;
  const sy = (y: number) =>
    MARGIN.top + plotH - ((y - yRange[0]) / (yRange[1] - yRange[0])) * plotH;

  if (options.regions) {
    const poly = (fill: string, pts: Array<[number, number]>) => {
      ctx.fillStyle = fill;
      ctx.beginPath();
      ctx.moveTo(sx(pts[0][0]), sy(pts[0][1]));
      for (const [px, py] of pts.slice(1)) {
        ctx.lineTo(sx(px), sy(py));
      }
      ctx.closePath();
      ctx.fill();
    };
    poly(REGION_FILLS.both_moderate, [[0, 0], [1, 0], [1, 1], [0, 1]]);
    poly(REGION_FILLS.both_poorly, [[0, 0], [0.5, 0], [0, 0.5]]);
    poly(REGION_FILLS.both_well, [[1, 1], [0.5, 1], [1, 0.5]]);
    poly(REGION_FILLS.alg1_wins, [[0.5, 0], [1, 0], [1, 0.5]]);
    poly(REGION_FILLS.alg2_wins, [[0, 0.5], [0, 1], [0.5, 1]]);
  }

  ctx.strokeStyle = "#a1a1aa";
  ctx.lineWidth = 1;
  ctx.strokeRect(MARGIN.left, MARGIN.top, plotW, plotH);

  ctx.fillStyle = "#3f3f46";
  ctx.font = "12px system-ui, sans-serif";
  ctx.textAlign = "center";
  for (const t of [0, 0.25, 0.5, 0.75, 1]) {
    const dx = xRange[0] + t * (xRange[1] - xRange[0]);
    const dy = yRange[0] + t * (yRange[1] - yRange[0]);
    ctx.fillText(dx.toFixed(2), sx(dx), height - MARGIN.bottom + 16);
    ctx.textAlign = "right";
    ctx.fillText(dy.toFixed(2), MARGIN.left - 6, sy(dy) + 4);
    ctx.textAlign = "center";
  }
  ctx.fillText(options.xLabel, MARGIN.left + plotW / 2, height - 8);
  ctx.save();
  ctx.translate(14, MARGIN.top + plotH / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(options.yLabel, 0, 0);
  ctx.restore();

  for (const p of points) {
    if (p.rx !== undefined && p.ry !== undefined) {
      const rx = Math.abs(sx(p.x + p.rx) - sx(p.x));
      const ry = Math.abs(sy(p.y + p.ry) - sy(p.y));
      if (rx > 0.5 || ry > 0.5) {
        ctx.fillStyle = ELLIPSE_FILL;
        ctx.beginPath();
        ctx.ellipse(sx(p.x), sy(p.y), Math.max(rx, 0.5), Math.max(ry, 0.5), 0, 0, 2 * Math.PI);
        ctx.fill();
      }
    }
  }
  for (const p of points) {
    ctx.fillStyle = p.highlighted ? HIGHLIGHT_COLOR : POINT_COLOR;
    ctx.beginPath();
    ctx.arc(sx(p.x), sy(p.y), 4, 0, 2 * Math.PI);
    ctx.fill();
    if (options.showLabels) {
      ctx.fillStyle = "#52525b";
      ctx.textAlign = "left";
      ctx.fillText(p.label, sx(p.x) + 6, sy(p.y) - 6);
    }
  }
}

function triggerDownload(url: string, filename: string): void {
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  document.body.appendChild(anchor);
  anchor.click();
  anchor.remove();
}

/** PNG at the canvas's own pixel dimensions. */
export function exportPng(canvas: HTMLCanvasElement, filename: string): void {
  triggerDownload(canvas.toDataURL("image/png"), filename);
}

export function exportCsv(content: string, filename: string): void {
  const blob = new Blob([content], { type: "text/csv" });
  const url = URL.createObjectURL(blob);
  triggerDownload(url, filename);
  URL.revokeObjectURL(url);
}
