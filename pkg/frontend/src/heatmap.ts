/**
 * SNR x QAM-side heatmap of mean accuracy degradation, with the <= 5 pp
 * region outlined. SNR runs left to right in dB with infinity as a
 * labeled terminal tick; sides run bottom to top.
 */

import { numberColumn, readCsv, requireColumns } from "./csv.js";
import { writePng } from "./raster.js";
import { formatNumber, formatSnr, heatColor, tag, text } from "./svg.js";
import type { PlotSpec, RenderInfo } from "./types.js";

const THRESHOLD_PP = 5;
const CELL_W = 64;
const CELL_H = 44;
const MARGIN = { left: 78, right: 118, top: 52, bottom: 66 };

interface Cell {
  col: number;
  row: number;
  mean: number;
}

export function renderHeatmap(spec: PlotSpec): RenderInfo {
  const table = readCsv(spec.input);
  const [snrCol, sideCol, dropCol] = requireColumns(table, spec.input, [
    ["snr_db"],
    ["side"],
    ["accuracy_drop", "accuracy_drop_vs_digital"],
  ]);
  const snrs = numberColumn(table, snrCol!);
  const sides = numberColumn(table, sideCol!);
  const drops = numberColumn(table, dropCol!);

  const snrAxis = [...new Set(snrs)].sort((a, b) => a - b);
  const sideAxis = [...new Set(sides)].sort((a, b) => a - b);

  const sums = new Map<string, { total: number; n: number }>();
  for (let i = 0; i < drops.length; i++) {
    if (!Number.isFinite(drops[i]!)) continue;
    const key = `${snrs[i]}|${sides[i]}`;
    const bucket = sums.get(key) ?? { total: 0, n: 0 };
    bucket.total += drops[i]!;
    bucket.n += 1;
    sums.set(key, bucket);
  }

  const cells: Cell[] = [];
  const meanAt = new Map<string, number>();
  for (let col = 0; col < snrAxis.length; col++) {
    for (let row = 0; row < sideAxis.length; row++) {
      const bucket = sums.get(`${snrAxis[col]}|${sideAxis[row]}`);
      if (bucket === undefined) continue;
      const mean = bucket.total / bucket.n;
      cells.push({ col, row, mean });
      meanAt.set(`${col}|${row}`, mean);
    }
  }

  const gridW = snrAxis.length * CELL_W;
  const gridH = sideAxis.length * CELL_H;
  const width = MARGIN.left + gridW + MARGIN.right;
  const height = MARGIN.top + gridH + MARGIN.bottom;
  const vmax = Math.max(THRESHOLD_PP, ...cells.map((c) => c.mean));

  const x0 = MARGIN.left;
  const y0 = MARGIN.top;
  // row 0 (smallest side) sits at the bottom
  const cellX = (col: number) => x0 + col * CELL_W;
  const cellY = (row: number) => y0 + (sideAxis.length - 1 - row) * CELL_H;

  const parts: string[] = [];
  parts.push(tag("rect", { x: 0, y: 0, width, height, fill: "white" }));
  parts.push(
    text(x0 + gridW / 2, 24, spec.title ?? "Accuracy degradation (pp)", {
      size: 15,
      anchor: "middle",
    }),
  );

  for (const cell of cells) {
    const mean = cell.mean;
    const t = vmax === 0 ? 0 : mean / vmax;
    parts.push(
      tag("rect", {
        x: cellX(cell.col),
        y: cellY(cell.row),
        width: CELL_W,
        height: CELL_H,
        fill: heatColor(t),
        stroke: "#d0d0d0",
        "stroke-width": 0.5,
      }),
    );
    parts.push(
      text(cellX(cell.col) + CELL_W / 2, cellY(cell.row) + CELL_H / 2 + 4, formatNumber(Math.round(mean * 10) / 10), {
        size: 11,
        anchor: "middle",
        fill: t > 0.55 ? "#ffffff" : "#1a1a1a",
      }),
    );
  }

  // Outline the <= threshold region: every edge between an inside cell
  // and an outside/missing neighbor (or the grid border) gets a segment.
  const inside = (col: number, row: number): boolean => {
    const mean = meanAt.get(`${col}|${row}`);
    return mean !== undefined && mean <= THRESHOLD_PP;
  };
  let contourSegments = 0;
  const seg = (xa: number, ya: number, xb: number, yb: number) => {
    contourSegments += 1;
    parts.push(
      tag("line", {
        x1: xa,
        y1: ya,
        x2: xb,
        y2: yb,
        stroke: "#111111",
        "stroke-width": 2.5,
        "stroke-linecap": "square",
      }),
    );
  };
  for (const cell of cells) {
    if (!inside(cell.col, cell.row)) continue;
    const px = cellX(cell.col);
    const py = cellY(cell.row);
    if (!inside(cell.col - 1, cell.row)) seg(px, py, px, py + CELL_H);
    if (!inside(cell.col + 1, cell.row)) seg(px + CELL_W, py, px + CELL_W, py + CELL_H);
    if (!inside(cell.col, cell.row + 1)) seg(px, py, px + CELL_W, py); // larger side = above
    if (!inside(cell.col, cell.row - 1)) seg(px, py + CELL_H, px + CELL_W, py + CELL_H);
  }

  for (let col = 0; col < snrAxis.length; col++) {
    parts.push(
      text(cellX(col) + CELL_W / 2, y0 + gridH + 20, formatSnr(snrAxis[col]!), {
        size: 12,
        anchor: "middle",
      }),
    );
  }
  parts.push(
    text(x0 + gridW / 2, y0 + gridH + 44, "hardware SNR (dB)", { size: 13, anchor: "middle" }),
  );
  for (let row = 0; row < sideAxis.length; row++) {
    parts.push(
      text(x0 - 10, cellY(row) + CELL_H / 2 + 4, formatNumber(sideAxis[row]!), {
        size: 12,
        anchor: "end",
      }),
    );
  }
  parts.push(
    text(22, y0 + gridH / 2, "QAM side", { size: 13, anchor: "middle", rotate: -90 }),
  );

  // colorbar
  const barX = x0 + gridW + 30;
  const barW = 16;
  const steps = 48;
  for (let i = 0; i < steps; i++) {
    const t = 1 - i / (steps - 1);
    parts.push(
      tag("rect", {
        x: barX,
        y: y0 + (i * gridH) / steps,
        width: barW,
        height: gridH / steps + 0.5,
        fill: heatColor(t),
      }),
    );
  }
  parts.push(
    tag("rect", { x: barX, y: y0, width: barW, height: gridH, fill: "none", stroke: "#777777", "stroke-width": 0.75 }),
  );
  for (const v of [0, THRESHOLD_PP, vmax]) {
    const ty = y0 + gridH * (1 - (vmax === 0 ? 0 : v / vmax));
    parts.push(text(barX + barW + 6, ty + 4, formatNumber(Math.round(v * 10) / 10), { size: 11 }));
  }
  parts.push(text(barX + barW / 2, y0 - 10, "drop (pp)", { size: 11, anchor: "middle" }));

  const svg = tag(
    "svg",
    { xmlns: "http://www.w3.org/2000/svg", width, height, viewBox: `0 0 ${width} ${height}` },
    parts.join(""),
  );
  writePng(svg, spec.output);
  return { output: spec.output, width, height, cells: cells.length, contourSegments };
}
