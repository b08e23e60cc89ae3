#!/usr/bin/env node
import { pathToFileURL } from "node:url";
import { isFigureKind } from "./csv.js";
import { render, type FigureSpec } from "./render.js";

const USAGE = "usage: figplots render <csv> --kind <bures-curve|gvp> --out <path> [--title <text>]";

function parseArgs(argv: string[]): FigureSpec {
  if (argv[0] !== "render" || argv.length < 2) {
    throw new Error(USAGE);
  }
  const spec: Partial<FigureSpec> = { csvPath: argv[1] };
  for (let i = 2; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new Error(`missing value for ${flag}`);
    }
    if (flag === "--kind") {
      if (!isFigureKind(value)) {
        throw new Error(`unknown kind "${value}": expected bures-curve or gvp`);
      }
      spec.kind = value;
    } else if (flag === "--out") {
      spec.outPath = value;
    } else if (flag === "--title") {
      spec.title = value;
    } else {
      throw new Error(`unknown flag ${flag}\n${USAGE}`);
    }
  }
  if (spec.kind === undefined || spec.outPath === undefined) {
    throw new Error(USAGE);
  }
  return spec as FigureSpec;
}

/** CLI body, returning the process exit code. */
export function main(argv: string[]): number {
  let spec: FigureSpec;
  try {
    spec = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  try {
    const out = render(spec);
    console.log(out.svgPath);
    console.log(out.pngPath);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exitCode = main(process.argv.slice(2));
}
