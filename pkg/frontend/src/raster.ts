import { writeFileSync } from "node:fs";
import { Resvg } from "@resvg/resvg-js";

/** Raster output resolution; fixed so identical SVG => identical PNG. */
export const DPI = 96;

/** Rasterize finished SVG markup and only then touch the output path. */
export function writePng(svg: string, output: string): void {
  const png = new Resvg(svg, {
    dpi: DPI,
    font: { loadSystemFonts: true, defaultFontFamily: "DejaVu Sans" },
    background: "white",
  })
    .render()
    .asPng();
  writeFileSync(output, png);
}
