export type PlotKind = "heatmap" | "lines";

/** One render request: which CSV, which figure, where to write it. */
export interface PlotSpec {
  /** Input result CSV (never modified). */
  input: string;
  kind: PlotKind;
  /** Output PNG path; written only after the figure renders. */
  output: string;
  title?: string;
  /**
   * Lines plots: the x-axis column, `total_levels` (default) or
   * `activation_energy`. Ignored by heatmaps.
   */
  xColumn?: "total_levels" | "activation_energy";
}

/** Geometry facts returned alongside the written file, mainly for tests. */
export interface RenderInfo {
  output: string;
  width: number;
  height: number;
  /** Heatmap: number of (snr, side) cells drawn. */
  cells?: number;
  /** Heatmap: count of contour edge segments at the 5 pp threshold. */
  contourSegments?: number;
  /** Lines: variants drawn as x-dependent lines. */
  lines?: number;
  /** Lines: variants drawn as dashed constant reference lines. */
  referenceLines?: number;
  /** Lines: x-intervals shaded where QAMNet leads every baseline. */
  shadedIntervals?: number;
}
