import { existsSync, readFileSync, writeFileSync } from "fs";
import * as path from "path";
import { describe, expect, it } from "vitest";

import { FormatError } from "../src/errors";
import { renderGrowth } from "../src/growth";
import { renderOrbit } from "../src/orbit";
import { renderSnapshot } from "../src/snapshot";
import { renderSweep } from "../src/sweep";
import {
  tempDir,
  writeDiagnosticsCsv,
  writeSnapshot,
  writeSweepCsv,
  writeTraceCsv,
} from "./fixtures";

describe("growth figure", () => {
  it("renders log curves with a fit annotation", () => {
    const dir = tempDir();
    const csv = writeDiagnosticsCsv(dir);
    const out = path.join(dir, "growth.svg");
    renderGrowth(csv, out, true);
    const svg = readFileSync(out, "utf-8");
    expect(svg).toContain("<svg");
    expect(svg).toContain("fitted rate");
    expect(svg).toContain("|rho+ - mu+|");
  });

  it("names a missing column", () => {
    const dir = tempDir();
    const file = path.join(dir, "broken.csv");
    writeFileSync(file, "time,dev_plus,dev_minus,elec,e_good,f_bad,mass\n0,1,1,1,1,1,1\n");
    expect(() => renderGrowth(file, path.join(dir, "x.svg"), false)).toThrow(/gap/);
  });

  it("reports the offending line for a bad number", () => {
    const dir = tempDir();
    const file = path.join(dir, "badnum.csv");
    writeFileSync(
      file,
      "time,dev_plus,dev_minus,elec,e_good,f_bad,gap,mass\n0,1,1,oops,1,1,0,1\n",
    );
    expect(() => renderGrowth(file, path.join(dir, "x.svg"), false)).toThrow(/line 2/);
  });

  it("renders a flat steady-state run without fitting", () => {
    const dir = tempDir();
    const file = path.join(dir, "steady.csv");
    const rows = ["time,dev_plus,dev_minus,elec,e_good,f_bad,gap,mass"];
    for (let i = 0; i < 12; i++) {
      rows.push(`${i},1e-15,1e-15,1e-30,4e-30,0,0,1`);
    }
    writeFileSync(file, rows.join("\n") + "\n");
    const out = path.join(dir, "steady.svg");
    renderGrowth(file, out, true);
    expect(readFileSync(out, "utf-8")).toContain("no exponential window");
  });
});

describe("snapshot figure", () => {
  it("renders every quantity", () => {
    const dir = tempDir();
    const snap = writeSnapshot(dir);
    for (const quantity of ["rho_plus", "rho_minus", "total", "temperature"] as const) {
      const out = path.join(dir, `${quantity}.svg`);
      renderSnapshot(snap, out, quantity);
      const svg = readFileSync(out, "utf-8");
      expect(svg).toContain("<svg");
      expect(svg).toContain("t = 2.5");
    }
  });

  it("fails loudly on a corrupted snapshot", () => {
    const dir = tempDir();
    const snap = writeSnapshot(dir);
    const raw = readFileSync(snap);
    const corrupted = path.join(dir, "corrupt.pfld");
    writeFileSync(corrupted, raw.subarray(0, raw.length - 9));
    expect(() =>
      renderSnapshot(corrupted, path.join(dir, "x.svg"), "total"),
    ).toThrow(FormatError);
    expect(existsSync(path.join(dir, "x.svg"))).toBe(false);
  });
});

describe("orbit figure", () => {
  it("renders the fall and the plane path", () => {
    const dir = tempDir();
    const trace = writeTraceCsv(dir);
    const out = path.join(dir, "orbit.svg");
    renderOrbit(trace, out);
    const svg = readFileSync(out, "utf-8");
    expect(svg).toContain("orbit trace (201 samples)");
    expect(svg).toContain("start");
  });

  it("rejects an empty trace", () => {
    const dir = tempDir();
    const file = path.join(dir, "empty.csv");
    writeFileSync(file, "t,x1,x2,v1,v2\n# nothing\n");
    expect(() => renderOrbit(file, path.join(dir, "x.svg"))).toThrow(/no data rows/);
  });
});

describe("sweep figure", () => {
  it("renders rates, amplification, and failure flags", () => {
    const dir = tempDir();
    const csv = writeSweepCsv(dir);
    const out = path.join(dir, "sweep.svg");
    renderSweep(csv, out);
    const svg = readFileSync(out, "utf-8");
    expect(svg).toContain("gradient sweep");
    expect(svg).toContain("4/(5 pi^2)");
    expect(svg).toContain("failed: error: boom, with comma");
  });
});
