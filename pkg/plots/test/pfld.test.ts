import { writeFileSync } from "fs";
import * as path from "path";
import { describe, expect, it } from "vitest";

import { FormatError } from "../src/errors";
import { readSnapshot } from "../src/pfld";
import { snapshotBuffer, tempDir } from "./fixtures";

describe("pfld reader", () => {
  it("parses a well-formed snapshot", () => {
    const dir = tempDir();
    const file = path.join(dir, "s.pfld");
    writeFileSync(file, snapshotBuffer(9, 8, 2.0, 1.25));
    const snap = readSnapshot(file);
    expect(snap.n1).toBe(9);
    expect(snap.n2).toBe(8);
    expect(snap.box).toBe(2.0);
    expect(snap.time).toBe(1.25);
    expect(snap.rhoPlus[0]).toBe(1.0); // hot wall
    expect(snap.rhoPlus[8 * 8]).toBe(0.0); // cold wall row start
    for (let i = 0; i < snap.rhoPlus.length; i++) {
      expect(snap.rhoPlus[i] + snap.rhoMinus[i]).toBeCloseTo(1.0, 12);
    }
  });

  it("rejects a bad magic", () => {
    const dir = tempDir();
    const buf = snapshotBuffer(5, 4);
    buf.write("XXXX", 0, "latin1");
    const file = path.join(dir, "bad.pfld");
    writeFileSync(file, buf);
    expect(() => readSnapshot(file)).toThrow(FormatError);
    expect(() => readSnapshot(file)).toThrow(/magic/);
  });

  it("rejects an unsupported version", () => {
    const dir = tempDir();
    const buf = snapshotBuffer(5, 4);
    buf.writeUInt32LE(9, 4);
    const file = path.join(dir, "v9.pfld");
    writeFileSync(file, buf);
    expect(() => readSnapshot(file)).toThrow(/version/);
  });

  it("rejects truncation", () => {
    const dir = tempDir();
    const buf = snapshotBuffer(5, 4);
    const file = path.join(dir, "short.pfld");
    writeFileSync(file, buf.subarray(0, buf.length - 16));
    expect(() => readSnapshot(file)).toThrow(/bytes/);
  });

  it("rejects a missing file", () => {
    expect(() => readSnapshot("/nonexistent/nowhere.pfld")).toThrow(FormatError);
  });
});
