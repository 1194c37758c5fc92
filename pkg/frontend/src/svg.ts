/** Minimal SVG assembly: tag builder, color ramp, label formatting. */

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function tag(name: string, attrs: Record<string, string | number>, body = ""): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? trimNum(v) : esc(v)}"`)
    .join(" ");
  return body === "" && name !== "text"
    ? `<${name} ${parts}/>`
    : `<${name} ${parts}>${body}</${name}>`;
}

/** Fixed-precision coordinates keep the output byte-stable. */
export function trimNum(v: number): string {
  const fixed = v.toFixed(2);
  return fixed.replace(/\.?0+$/, "") || "0";
}

export function text(
  x: number,
  y: number,
  body: string,
  opts: { size?: number; anchor?: string; fill?: string; rotate?: number } = {},
): string {
  const attrs: Record<string, string | number> = {
    x,
    y,
    "font-family": "DejaVu Sans, sans-serif",
    "font-size": opts.size ?? 12,
    "text-anchor": opts.anchor ?? "start",
    fill: opts.fill ?? "#1a1a1a",
  };
  if (opts.rotate !== undefined) {
    attrs.transform = `rotate(${opts.rotate} ${trimNum(x)} ${trimNum(y)})`;
  }
  return tag("text", attrs, esc(body));
}

/** White -> deep red, t in [0,1]; used for the degradation scale. */
export function heatColor(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const stops: [number, [number, number, number]][] = [
    [0.0, [255, 255, 255]],
    [0.35, [253, 199, 141]],
    [0.7, [227, 93, 56]],
    [1.0, [122, 12, 33]],
  ];
  for (let i = 0; i < stops.length - 1; i++) {
    const [t0, c0] = stops[i]!;
    const [t1, c1] = stops[i + 1]!;
    if (clamped <= t1) {
      const u = t1 === t0 ? 0 : (clamped - t0) / (t1 - t0);
      const mix = c0.map((a, j) => Math.round(a + u * (c1[j]! - a)));
      return `rgb(${mix.join(",")})`;
    }
  }
  return "rgb(122,12,33)";
}

/** Line/marker palette; QAMNet always takes the first color. */
export const PALETTE = [
  "#1f6fb4",
  "#d95f02",
  "#1b9e77",
  "#7570b3",
  "#e7298a",
  "#666666",
  "#a6611a",
  "#018571",
];

export function formatSnr(snrDb: number): string {
  if (snrDb === Infinity) return "∞";
  if (snrDb === -Infinity) return "-∞";
  return formatNumber(snrDb);
}

export function formatNumber(v: number): string {
  if (Number.isInteger(v)) return String(v);
  const rounded = Math.round(v * 100) / 100;
  return String(rounded);
}
