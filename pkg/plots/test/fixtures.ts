/** Synthesized artifacts matching the documented on-disk contracts. */

import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import * as path from "path";

export function tempDir(): string {
  return mkdtempSync(path.join(tmpdir(), "plasma-plots-"));
}

export function writeDiagnosticsCsv(dir: string, rows = 130): string {
  const header = "time,dev_plus,dev_minus,elec,e_good,f_bad,gap,mass";
  const lines = [header];
  for (let i = 0; i < rows; i++) {
    const t = i * 0.5;
    const dev = 1e-6 * Math.exp(0.127 * t);
    const elec = 0.25 * dev * dev;
    lines.push(
      [t, dev, dev * 0.98, elec, 2 * dev * dev, 1.9 * dev * dev, 1e-9, 1.0].join(","),
    );
  }
  const file = path.join(dir, "diagnostics.csv");
  writeFileSync(file, lines.join("\n") + "\n");
  return file;
}

export function snapshotBuffer(n1: number, n2: number, box = 1.0, time = 0.0): Buffer {
  const samples = n1 * n2;
  const buf = Buffer.alloc(32 + 2 * samples * 8);
  buf.write("PFLD", 0, "latin1");
  buf.writeUInt32LE(1, 4);
  buf.writeUInt32LE(n1, 8);
  buf.writeUInt32LE(n2, 12);
  buf.writeDoubleLE(box, 16);
  buf.writeDoubleLE(time, 24);
  for (let i = 0; i < n1; i++) {
    for (let j = 0; j < n2; j++) {
      const hot = 1 - i / (n1 - 1); // bad-curvature linear profile
      buf.writeDoubleLE(hot, 32 + (i * n2 + j) * 8);
      buf.writeDoubleLE(1 - hot, 32 + (samples + i * n2 + j) * 8);
    }
  }
  return buf;
}

export function writeSnapshot(dir: string, name = "state.pfld"): string {
  const file = path.join(dir, name);
  writeFileSync(file, snapshotBuffer(9, 8, 1.0, 2.5));
  return file;
}

export function writeTraceCsv(dir: string): string {
  const lines = ["t,x1,x2,v1,v2"];
  for (let i = 0; i <= 200; i++) {
    const t = i * 0.1;
    lines.push(
      [t, Math.cos(t) - 1, -Math.sin(t) - 0.5 * t, Math.sin(t), Math.cos(t)].join(","),
    );
  }
  lines.push("# invariants: dC1=1e-14 dC2=1e-14 fall_residual=1e-14");
  const file = path.join(dir, "trace.csv");
  writeFileSync(file, lines.join("\n") + "\n");
  return file;
}

export function writeSweepCsv(dir: string): string {
  const lines = [
    "gradient,predicted_rate,measured_rate,max_amplification,status",
    "0.02,0.1098,0.1095,8000,ok",
    "0.04,0.1273,0.1271,9500,ok",
    "0.081,0.0067,0.0065,40,ok",
    "0.12,0,0,1.8,ok",
    "0.3,nan,nan,nan,error: boom, with comma",
  ];
  const file = path.join(dir, "sweep.csv");
  writeFileSync(file, lines.join("\n") + "\n");
  return file;
}
