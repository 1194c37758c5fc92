/**
 * Accuracy-vs-levels (or energy) line chart: one line per variant with
 * per-seed scatter, plus a shaded band over the x-range where the QAMNet
 * mean exceeds every 1D baseline mean. Variants without a usable x value
 * (full-precision rows carry total_levels 0 / energy nan) are drawn as
 * dashed horizontal reference lines instead.
 */

import { numberColumn, readCsv, requireColumns, stringColumn } from "./csv.js";
import { writePng } from "./raster.js";
import { PALETTE, formatNumber, tag, text, trimNum } from "./svg.js";
import type { PlotSpec, RenderInfo } from "./types.js";

const PLOT_W = 470;
const PLOT_H = 300;
const MARGIN = { left: 66, right: 178, top: 52, bottom: 60 };
const QAM_VARIANT = "QAMNet";

interface Curve {
  variant: string;
  xs: number[]; // sorted unique x values
  means: number[];
  points: [number, number][]; // per-seed (x, accuracy)
}

export function renderEquivalenceLines(spec: PlotSpec): RenderInfo {
  const xName = spec.xColumn ?? "total_levels";
  const table = readCsv(spec.input);
  const [variantCol, xCol, accCol] = requireColumns(table, spec.input, [
    ["variant"],
    [xName],
    ["test_accuracy"],
  ]);
  const variants = stringColumn(table, variantCol!);
  const xsRaw = numberColumn(table, xCol!);
  const accs = numberColumn(table, accCol!);

  const byVariant = new Map<string, [number, number][]>();
  for (let i = 0; i < variants.length; i++) {
    const list = byVariant.get(variants[i]!) ?? [];
    list.push([xsRaw[i]!, accs[i]!]);
    byVariant.set(variants[i]!, list);
  }

  const curves: Curve[] = [];
  const references: { variant: string; mean: number }[] = [];
  for (const [variant, pts] of byVariant) {
    const usable = pts.filter(([x]) => Number.isFinite(x) && x > 0);
    if (usable.length === 0) {
      const mean = pts.reduce((s, [, a]) => s + a, 0) / pts.length;
      references.push({ variant, mean });
      continue;
    }
    const xs = [...new Set(usable.map(([x]) => x))].sort((a, b) => a - b);
    const means = xs.map((x) => {
      const here = usable.filter(([px]) => px === x);
      return here.reduce((s, [, a]) => s + a, 0) / here.length;
    });
    curves.push({ variant, xs, means, points: usable });
  }
  curves.sort((a, b) =>
    a.variant === QAM_VARIANT ? -1 : b.variant === QAM_VARIANT ? 1 : a.variant.localeCompare(b.variant),
  );
  references.sort((a, b) => a.variant.localeCompare(b.variant));

  // ordinal x positions over the union of curve x values
  const xAxis = [...new Set(curves.flatMap((c) => c.xs))].sort((a, b) => a - b);
  const rotateTicks = xAxis.some((x) => formatNumber(x).length > 5);
  const bottom = rotateTicks ? MARGIN.bottom + 26 : MARGIN.bottom;
  const x0 = MARGIN.left;
  const y0 = MARGIN.top;
  const width = MARGIN.left + PLOT_W + MARGIN.right;
  const height = MARGIN.top + PLOT_H + bottom;
  const px = (x: number) => {
    if (xAxis.length === 1) return x0 + PLOT_W / 2;
    const idx = xAxis.indexOf(x);
    const frac = idx >= 0 ? idx / (xAxis.length - 1) : positionBetween(x, xAxis);
    return x0 + frac * PLOT_W;
  };

  const allAccs = [
    ...curves.flatMap((c) => c.points.map(([, a]) => a)),
    ...references.map((r) => r.mean),
  ];
  const lo = Math.min(...allAccs);
  const hi = Math.max(...allAccs);
  const yMin = Math.max(0, Math.floor((lo - 0.02) * 20) / 20);
  const yMax = Math.min(1, Math.ceil((hi + 0.02) * 20) / 20);
  const py = (a: number) => y0 + PLOT_H * (1 - (a - yMin) / Math.max(yMax - yMin, 1e-9));

  const parts: string[] = [];
  parts.push(tag("rect", { x: 0, y: 0, width, height, fill: "white" }));
  const defaultTitle =
    xName === "total_levels" ? "Test accuracy vs constellation size" : "Test accuracy vs activation energy";
  parts.push(text(x0 + PLOT_W / 2, 26, spec.title ?? defaultTitle, { size: 15, anchor: "middle" }));

  // shaded advantage band: QAMNet mean above the max of baseline means
  const shaded = advantageIntervals(curves);
  let shadedIntervals = 0;
  if (shaded !== null) {
    shadedIntervals = shaded.intervals.length;
    for (const band of shaded.intervals) {
      const top = band.map(([x, q]) => `${trimNum(px(x))},${trimNum(py(q))}`);
      const bottom = band
        .slice()
        .reverse()
        .map(([x, , c]) => `${trimNum(px(x))},${trimNum(py(c))}`);
      parts.push(
        tag("polygon", {
          points: [...top, ...bottom].join(" "),
          fill: "#a8c8e8",
          "fill-opacity": 0.45,
          stroke: "none",
        }),
      );
    }
  }

  // grid lines + y ticks every 0.05
  for (let v = yMin; v <= yMax + 1e-9; v += 0.05) {
    const ty = py(v);
    parts.push(
      tag("line", { x1: x0, y1: ty, x2: x0 + PLOT_W, y2: ty, stroke: "#e4e4e4", "stroke-width": 1 }),
    );
    parts.push(text(x0 - 8, ty + 4, formatNumber(Math.round(v * 100) / 100), { size: 11, anchor: "end" }));
  }
  for (const x of xAxis) {
    parts.push(
      rotateTicks
        ? text(px(x) + 4, y0 + PLOT_H + 16, formatNumber(x), { size: 10, anchor: "end", rotate: -35 })
        : text(px(x), y0 + PLOT_H + 20, formatNumber(x), { size: 11, anchor: "middle" }),
    );
  }
  parts.push(
    text(x0 + PLOT_W / 2, y0 + PLOT_H + (rotateTicks ? 68 : 42), xName === "total_levels" ? "total constellation levels N" : "client activation energy (Δ² units)", {
      size: 13,
      anchor: "middle",
    }),
  );
  parts.push(text(20, y0 + PLOT_H / 2, "test accuracy", { size: 13, anchor: "middle", rotate: -90 }));
  parts.push(
    tag("rect", { x: x0, y: y0, width: PLOT_W, height: PLOT_H, fill: "none", stroke: "#777777", "stroke-width": 1 }),
  );

  const colorOf = new Map<string, string>();
  curves.forEach((c, i) => colorOf.set(c.variant, PALETTE[i % PALETTE.length]!));
  const refColors = ["#555555", "#999999", "#bb8800", "#445566"];

  for (const [i, ref] of references.entries()) {
    const ty = py(ref.mean);
    parts.push(
      tag("line", {
        x1: x0,
        y1: ty,
        x2: x0 + PLOT_W,
        y2: ty,
        stroke: refColors[i % refColors.length]!,
        "stroke-width": 1.5,
        "stroke-dasharray": "7 4",
      }),
    );
  }

  for (const curve of curves) {
    const color = colorOf.get(curve.variant)!;
    if (curve.xs.length > 1) {
      const pathPoints = curve.xs.map((x, i) => `${trimNum(px(x))},${trimNum(py(curve.means[i]!))}`);
      parts.push(
        tag("polyline", {
          points: pathPoints.join(" "),
          fill: "none",
          stroke: color,
          "stroke-width": 2,
        }),
      );
    }
    for (const [x, i] of curve.xs.map((x, i) => [x, i] as const)) {
      parts.push(
        tag("circle", { cx: px(x), cy: py(curve.means[i]!), r: 4, fill: color }),
      );
    }
    for (const [x, a] of curve.points) {
      parts.push(
        tag("circle", { cx: px(x), cy: py(a), r: 2.2, fill: color, "fill-opacity": 0.5 }),
      );
    }
  }

  // legend
  let ly = y0 + 8;
  const lx = x0 + PLOT_W + 18;
  for (const curve of curves) {
    const color = colorOf.get(curve.variant)!;
    parts.push(tag("line", { x1: lx, y1: ly, x2: lx + 22, y2: ly, stroke: color, "stroke-width": 2.5 }));
    parts.push(text(lx + 28, ly + 4, curve.variant, { size: 12 }));
    ly += 20;
  }
  for (const [i, ref] of references.entries()) {
    parts.push(
      tag("line", {
        x1: lx,
        y1: ly,
        x2: lx + 22,
        y2: ly,
        stroke: refColors[i % refColors.length]!,
        "stroke-width": 1.5,
        "stroke-dasharray": "7 4",
      }),
    );
    parts.push(text(lx + 28, ly + 4, ref.variant, { size: 12 }));
    ly += 20;
  }
  if (shadedIntervals > 0) {
    parts.push(
      tag("rect", { x: lx, y: ly - 6, width: 22, height: 12, fill: "#a8c8e8", "fill-opacity": 0.45 }),
    );
    parts.push(text(lx + 28, ly + 4, "QAMNet advantage", { size: 12 }));
  }

  const svg = tag(
    "svg",
    { xmlns: "http://www.w3.org/2000/svg", width, height, viewBox: `0 0 ${width} ${height}` },
    parts.join(""),
  );
  writePng(svg, spec.output);
  return {
    output: spec.output,
    width,
    height,
    lines: curves.length,
    referenceLines: references.length,
    shadedIntervals,
  };
}

/** Fractional ordinal position for an x between axis ticks (crossings). */
function positionBetween(x: number, xAxis: number[]): number {
  for (let i = 0; i < xAxis.length - 1; i++) {
    const a = xAxis[i]!;
    const b = xAxis[i + 1]!;
    if (x >= a && x <= b) {
      return (i + (x - a) / (b - a)) / (xAxis.length - 1);
    }
  }
  return x <= xAxis[0]! ? 0 : 1;
}

type BandPoint = [x: number, qam: number, cmp: number];

/** Piecewise-linear value of a curve's mean at x; NaN outside its span. */
function interpMean(curve: Curve, x: number): number {
  const { xs, means } = curve;
  if (x < xs[0]! || x > xs[xs.length - 1]!) return NaN;
  for (let i = 0; i < xs.length - 1; i++) {
    if (x >= xs[i]! && x <= xs[i + 1]!) {
      const t = (x - xs[i]!) / (xs[i + 1]! - xs[i]!);
      return means[i]! + t * (means[i + 1]! - means[i]!);
    }
  }
  return means[xs.length - 1]!;
}

/**
 * X-intervals where the QAMNet mean strictly exceeds the pointwise max
 * of every other curve's mean. Curves are compared by linear
 * interpolation over the region where QAMNet and at least one baseline
 * overlap (x grids need not coincide, e.g. on the energy axis), with
 * crossings located by interpolating the difference. Returns null when
 * QAMNet or all baselines are absent or the spans never overlap.
 */
function advantageIntervals(curves: Curve[]): { intervals: BandPoint[][] } | null {
  const qam = curves.find((c) => c.variant === QAM_VARIANT);
  const others = curves.filter((c) => c.variant !== QAM_VARIANT);
  if (qam === undefined || others.length === 0) return null;

  const cmpAt = (x: number) => {
    const here = others.map((c) => interpMean(c, x)).filter((v) => !Number.isNaN(v));
    return here.length === 0 ? NaN : Math.max(...here);
  };
  const qamAt = (x: number) => interpMean(qam, x);

  // evaluation knots: every curve's x values, restricted to where both
  // QAMNet and some baseline are defined
  const knots = [...new Set(curves.flatMap((c) => c.xs))]
    .sort((a, b) => a - b)
    .filter((x) => !Number.isNaN(qamAt(x)) && !Number.isNaN(cmpAt(x)));
  if (knots.length === 0) return null;

  const intervals: BandPoint[][] = [];
  let current: BandPoint[] | null = null;
  const push = (p: BandPoint) => {
    if (current === null) current = [p];
    else current.push(p);
  };
  const close = () => {
    if (current !== null && current.length > 0) intervals.push(current);
    current = null;
  };

  for (let i = 0; i < knots.length; i++) {
    const x = knots[i]!;
    const diff = qamAt(x) - cmpAt(x);
    if (diff > 0) push([x, qamAt(x), cmpAt(x)]);
    else close();

    if (i === knots.length - 1) break;
    const xN = knots[i + 1]!;
    const diffN = qamAt(xN) - cmpAt(xN);
    if (diff > 0 !== diffN > 0 && diff !== diffN) {
      // sign change between knots: both curves meet at xC
      const t = diff / (diff - diffN);
      const xC = x + t * (xN - x);
      const yC = qamAt(x) + t * (qamAt(xN) - qamAt(x));
      if (diff > 0) {
        push([xC, yC, yC]);
        close();
      } else {
        push([xC, yC, yC]);
      }
    }
  }
  close();
  // single-point intervals still mark an advantage; keep them (they
  // render as a zero-width band at the point)
  return {
    intervals: intervals.map((band) =>
      band.length === 1 ? [band[0]!, band[0]!] : band,
    ),
  };
}
