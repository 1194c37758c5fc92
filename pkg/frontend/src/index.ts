export { SchemaError, parseFloatToken, readCsv, requireColumns } from "./csv.js";
export { renderHeatmap } from "./heatmap.js";
export { renderEquivalenceLines } from "./lines.js";
export { run as runCli } from "./cli.js";
export type { PlotKind, PlotSpec, RenderInfo } from "./types.js";
