#!/usr/bin/env node
/**
 * plasma-plots: SVG figures from plasma slab run artifacts.
 *
 * Usage:
 *   plasma-plots growth   --in diagnostics.csv [--out fig.svg] [--fit]
 *   plasma-plots snapshot --in state.pfld [--out fig.svg]
 *                         [--quantity rho_plus|rho_minus|total|temperature]
 *   plasma-plots orbit    --in trace.csv [--out fig.svg]
 *   plasma-plots sweep    --in sweep.csv [--out fig.svg]
 *
 * Exit codes: 0 success, 1 contract violation or I/O failure, 2 bad usage.
 * Inputs are never modified; output names default to <input>.<kind>.svg.
 */

import * as path from "path";
import { FormatError, UsageError } from "./errors";
import { renderGrowth } from "./growth";
import { renderOrbit } from "./orbit";
import { Quantity, QUANTITIES, renderSnapshot } from "./snapshot";
import { renderSweep } from "./sweep";

const KINDS = ["growth", "snapshot", "orbit", "sweep"];

interface Args {
  kind: string;
  inPath: string;
  outPath: string;
  quantity: Quantity;
  fit: boolean;
}

export function parseArgs(argv: string[]): Args {
  if (argv.length === 0) {
    throw new UsageError(`missing figure kind; expected one of ${KINDS.join(", ")}`);
  }
  const [kind, ...rest] = argv;
  if (!KINDS.includes(kind)) {
    throw new UsageError(`unknown kind '${kind}'; expected one of ${KINDS.join(", ")}`);
  }
  let inPath = "";
  let outPath = "";
  let quantity: Quantity = "total";
  let fit = false;
  for (let i = 0; i < rest.length; i++) {
    const flag = rest[i];
    switch (flag) {
      case "--in":
        inPath = rest[++i] ?? "";
        break;
      case "--out":
        outPath = rest[++i] ?? "";
        break;
      case "--quantity":
        quantity = (rest[++i] ?? "") as Quantity;
        break;
      case "--fit":
        fit = true;
        break;
      default:
        throw new UsageError(`unknown flag '${flag}'`);
    }
  }
  if (!inPath) {
    throw new UsageError("--in <path> is required");
  }
  if (quantity && !QUANTITIES.includes(quantity)) {
    throw new UsageError(
      `--quantity must be one of ${QUANTITIES.join(", ")}, got '${quantity}'`,
    );
  }
  if (!outPath) {
    const base = path.basename(inPath).replace(/\.[^.]*$/, "");
    outPath = path.join(path.dirname(inPath), `${base}.${kind}.svg`);
  }
  return { kind, inPath, outPath, quantity, fit };
}

export function run(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`usage error: ${(err as Error).message}\n`);
    return 2;
  }
  try {
    switch (args.kind) {
      case "growth":
        renderGrowth(args.inPath, args.outPath, args.fit);
        break;
      case "snapshot":
        renderSnapshot(args.inPath, args.outPath, args.quantity);
        break;
      case "orbit":
        renderOrbit(args.inPath, args.outPath);
        break;
      case "sweep":
        renderSweep(args.inPath, args.outPath);
        break;
    }
  } catch (err) {
    if (err instanceof FormatError) {
      process.stderr.write(`${err.message}\n`);
    } else {
      process.stderr.write(`error: ${(err as Error).message}\n`);
    }
    return 1;
  }
  process.stdout.write(`${args.outPath}\n`);
  return 0;
}

if (require.main === module) {
  process.exit(run(process.argv.slice(2)));
}
