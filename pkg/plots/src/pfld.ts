/**
 * Reader for the binary PFLD field snapshots.
 *
 * Layout (little-endian): magic "PFLD", u32 format version (1), u32 n1,
 * u32 n2, f64 box size, f64 time, then rho_plus and rho_minus row-major
 * as f64.  Anything else is rejected.
 */

import { readFileSync } from "fs";
import { FormatError } from "./errors";

export interface Snapshot {
  n1: number;
  n2: number;
  box: number;
  time: number;
  rhoPlus: Float64Array;
  rhoMinus: Float64Array;
}

const HEADER_BYTES = 32;

export function readSnapshot(path: string): Snapshot {
  let buf: Buffer;
  try {
    buf = readFileSync(path);
  } catch (err) {
    throw new FormatError(`cannot read ${path}: ${(err as Error).message}`);
  }
  if (buf.length < HEADER_BYTES || buf.toString("latin1", 0, 4) !== "PFLD") {
    throw new FormatError(`${path}: not a PFLD snapshot (bad magic)`);
  }
  const version = buf.readUInt32LE(4);
  if (version !== 1) {
    throw new FormatError(`${path}: unsupported snapshot version ${version}`);
  }
  const n1 = buf.readUInt32LE(8);
  const n2 = buf.readUInt32LE(12);
  const box = buf.readDoubleLE(16);
  const time = buf.readDoubleLE(24);
  if (n1 < 2 || n2 < 2 || !(box > 0)) {
    throw new FormatError(`${path}: nonsensical header (n1=${n1}, n2=${n2}, box=${box})`);
  }
  const samples = n1 * n2;
  const expected = HEADER_BYTES + 2 * samples * 8;
  if (buf.length !== expected) {
    throw new FormatError(
      `${path}: expected ${expected} bytes for a ${n1}x${n2} snapshot, found ${buf.length}`,
    );
  }
  const body = Uint8Array.prototype.slice.call(buf, HEADER_BYTES);
  const all = new Float64Array(body.buffer, 0, 2 * samples);
  const snapshot: Snapshot = {
    n1,
    n2,
    box,
    time,
    rhoPlus: all.slice(0, samples),
    rhoMinus: all.slice(samples),
  };
  for (const arr of [snapshot.rhoPlus, snapshot.rhoMinus]) {
    for (let i = 0; i < arr.length; i++) {
      if (!Number.isFinite(arr[i])) {
        throw new FormatError(`${path}: non-finite sample at index ${i}`);
      }
    }
  }
  return snapshot;
}
