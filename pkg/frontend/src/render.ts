/**
 * Figure assembly: one panel per observable column, snapshots overlaid and
 * keyed by their time in the legend.
 */

import { writeFileSync } from "node:fs";

import { loadSnapshots, type ModelId, SchemaError, type Snapshot } from "./csv.js";
import { PALETTE, renderFigure, type PanelSpec, type Series } from "./svg.js";

export interface PlotJob {
  model: ModelId;
  inputs: string[];
  outPath: string;
  xLabel?: string;
  xLim?: [number, number];
  /** Shared value-axis window applied to every panel. */
  yLim?: [number, number];
}

function colorFor(index: number): string {
  return PALETTE[index % PALETTE.length] as string;
}

export function buildPanels(job: PlotJob, snapshots: Snapshot[]): PanelSpec[] {
  const first = snapshots[0];
  if (first === undefined) {
    throw new SchemaError("no input snapshots");
  }
  return first.columns.map((column, c) => {
    const panel: PanelSpec = {
      yLabel: column,
      xLabel: job.xLabel ?? "x",
      series: snapshots.map((snap, i) => ({
        label: snap.label,
        color: colorFor(i),
        x: snap.x,
        y: snap.series[c] as number[],
      })),
    };
    if (job.xLim) panel.xLim = job.xLim;
    if (job.yLim) panel.yLim = job.yLim;
    return panel;
  });
}

/** Render the job to SVG text without touching the file system. */
export function renderJob(job: PlotJob): string {
  const snapshots = loadSnapshots(job.model, job.inputs);
  const panels = buildPanels(job, snapshots);
  const legend: Series[] = snapshots.map((snap, i) => ({
    label: snap.label,
    color: colorFor(i),
    x: [],
    y: [],
  }));
  return renderFigure(panels, legend);
}

export function renderToFile(job: PlotJob): void {
  writeFileSync(job.outPath, renderJob(job), "utf8");
}
