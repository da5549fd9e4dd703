#!/usr/bin/env node
/**
 * plotkit command line.
 *
 *   plot <model> <csv...> --out FILE [--x-min A --x-max B --y-min C --y-max D]
 *
 * Exit codes: 0 success, 1 usage error, 2 schema mismatch, 3 file-system
 * error.
 */

import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { MODEL_IDS, type ModelId, SchemaError } from "./csv.js";
import { renderToFile, type PlotJob } from "./render.js";

export const EXIT_USAGE = 1;
export const EXIT_SCHEMA = 2;
export const EXIT_IO = 3;

const USAGE = `usage: plotkit plot <model> <snapshot.csv...> --out FILE
  model: ${MODEL_IDS.join(" | ")}
  options: --x-min A --x-max B  --y-min C --y-max D`;

function parseLimit(raw: string | undefined, flag: string): number | undefined {
  if (raw === undefined) return undefined;
  const value = Number(raw);
  if (!Number.isFinite(value)) {
    throw new RangeError(`${flag} must be a finite number, got ${raw}`);
  }
  return value;
}

function buildJob(argv: string[]): PlotJob {
  const parsed = parseArgs({
    args: argv,
    allowPositionals: true,
    options: {
      out: { type: "string" },
      "x-min": { type: "string" },
      "x-max": { type: "string" },
      "y-min": { type: "string" },
      "y-max": { type: "string" },
    },
  });
  const [command, model, ...inputs] = parsed.positionals;
  if (command !== "plot") {
    throw new RangeError(`unknown command ${JSON.stringify(command ?? "")}`);
  }
  if (model === undefined || !(MODEL_IDS as readonly string[]).includes(model)) {
    throw new RangeError(`model must be one of ${MODEL_IDS.join(", ")}, got ${model ?? "nothing"}`);
  }
  if (inputs.length === 0) {
    throw new RangeError("no snapshot files given");
  }
  if (parsed.values.out === undefined) {
    throw new RangeError("--out FILE is required");
  }

  const job: PlotJob = { model: model as ModelId, inputs, outPath: parsed.values.out };
  const xMin = parseLimit(parsed.values["x-min"], "--x-min");
  const xMax = parseLimit(parsed.values["x-max"], "--x-max");
  const yMin = parseLimit(parsed.values["y-min"], "--y-min");
  const yMax = parseLimit(parsed.values["y-max"], "--y-max");
  if ((xMin === undefined) !== (xMax === undefined)) {
    throw new RangeError("--x-min and --x-max must be given together");
  }
  if ((yMin === undefined) !== (yMax === undefined)) {
    throw new RangeError("--y-min and --y-max must be given together");
  }
  if (xMin !== undefined && xMax !== undefined) job.xLim = [xMin, xMax];
  if (yMin !== undefined && yMax !== undefined) job.yLim = [yMin, yMax];
  return job;
}

export function main(argv: string[], log: (line: string) => void = console.error): number {
  let job: PlotJob;
  try {
    job = buildJob(argv);
  } catch (err) {
    log(err instanceof Error ? err.message : String(err));
    log(USAGE);
    return EXIT_USAGE;
  }
  try {
    renderToFile(job);
  } catch (err) {
    if (err instanceof SchemaError) {
      log(`schema error: ${err.message}`);
      return EXIT_SCHEMA;
    }
    if (err instanceof Error && "code" in err) {
      log(`i/o error: ${err.message}`);
      return EXIT_IO;
    }
    throw err;
  }
  log(`wrote ${job.outPath}`);
  return 0;
}

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
