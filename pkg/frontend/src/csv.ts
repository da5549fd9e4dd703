/**
 * Snapshot CSV loading and schema validation.
 *
 * The solver writes one file per snapshot, named `snapshot_t<time>.csv`,
 * with a leading `x` column followed by the model's observable columns:
 * `strain,stress` for the elastic model, `rho_1..rho_m` for the traffic
 * model. Every cell is a plain decimal float. Anything else is rejected.
 */

import { readFileSync } from "node:fs";
import { basename } from "node:path";

export type ModelId = "elastic" | "traffic";

export const MODEL_IDS: readonly ModelId[] = ["elastic", "traffic"];

/** Input violates the documented snapshot schema. */
export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export interface Snapshot {
  path: string;
  /** Legend entry; `t = <time>` when the file name carries one. */
  label: string;
  time: number | null;
  x: number[];
  /** Observable column names, the x column excluded. */
  columns: string[];
  /** Row-major cell values, one inner array per observable column. */
  series: number[][];
}

const FLOAT = /^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$/;

function parseCell(token: string, where: string): number {
  if (!FLOAT.test(token)) {
    throw new SchemaError(`${where}: not a decimal number: ${JSON.stringify(token)}`);
  }
  const value = Number(token);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`${where}: non-finite value ${token}`);
  }
  return value;
}

/** Check the observable columns against a model's schema. */
export function validateColumns(model: ModelId, columns: string[]): void {
  if (model === "elastic") {
    if (columns.length !== 2 || columns[0] !== "strain" || columns[1] !== "stress") {
      throw new SchemaError(
        `elastic snapshots carry columns strain,stress; got ${columns.join(",")}`,
      );
    }
    return;
  }
  if (columns.length === 0) {
    throw new SchemaError("traffic snapshots need at least one rho_<i> column");
  }
  columns.forEach((name, i) => {
    if (name !== `rho_${i + 1}`) {
      throw new SchemaError(
        `traffic snapshots carry columns rho_1..rho_m; got ${columns.join(",")}`,
      );
    }
  });
}

/** Extract the snapshot time from the solver's file naming, if present. */
export function timeFromName(path: string): number | null {
  const match = /^snapshot_t(.+)\.csv$/.exec(basename(path));
  if (match === null) return null;
  const value = Number(match[1]);
  return Number.isFinite(value) ? value : null;
}

export function parseSnapshot(model: ModelId, path: string, text: string): Snapshot {
  const lines = text.split(/\r?\n/);
  while (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  if (lines.length === 0) {
    throw new SchemaError(`${path}: empty file`);
  }
  const header = (lines[0] as string).split(",");
  if (header[0] !== "x") {
    throw new SchemaError(`${path}: first column must be x, got ${JSON.stringify(header[0])}`);
  }
  const columns = header.slice(1);
  validateColumns(model, columns);
  if (lines.length === 1) {
    throw new SchemaError(`${path}: no data rows`);
  }

  const x: number[] = [];
  const series: number[][] = columns.map(() => []);
  for (let row = 1; row < lines.length; row++) {
    const cells = (lines[row] as string).split(",");
    const where = `${path}:${row + 1}`;
    if (cells.length !== header.length) {
      throw new SchemaError(`${where}: ${cells.length} cells under ${header.length} headers`);
    }
    x.push(parseCell(cells[0] as string, where));
    for (let c = 0; c < columns.length; c++) {
      (series[c] as number[]).push(parseCell(cells[c + 1] as string, where));
    }
  }

  const time = timeFromName(path);
  return {
    path,
    label: time === null ? basename(path) : `t = ${time}`,
    time,
    x,
    columns,
    series,
  };
}

export function loadSnapshot(model: ModelId, path: string): Snapshot {
  return parseSnapshot(model, path, readFileSync(path, "utf8"));
}

/** Load several snapshots and require one shared schema across them. */
export function loadSnapshots(model: ModelId, paths: string[]): Snapshot[] {
  const snapshots = paths.map((p) => loadSnapshot(model, p));
  const first = snapshots[0];
  if (first !== undefined) {
    for (const snap of snapshots) {
      if (snap.columns.join(",") !== first.columns.join(",")) {
        throw new SchemaError(
          `inputs disagree on columns: ${first.path} has ${first.columns.join(",")}, ` +
            `${snap.path} has ${snap.columns.join(",")}`,
        );
      }
    }
  }
  return snapshots;
}
