/**
 * Orbit-trace figure: two panels from a trace CSV (t,x1,x2,v1,v2) showing
 * the vertical fall against time and the path in the slab plane.
 */

import { writeFileSync } from "fs";
import { readCsv } from "./csv";
import { Scene, linearScale, niceTicks } from "./svg";

const TRACE_COLUMNS = ["t", "x1", "x2", "v1", "v2"];

function padded(values: number[]): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = 0.05 * (hi - lo);
  return [lo - pad, hi + pad];
}

export function renderOrbit(inPath: string, outPath: string): void {
  const table = readCsv(inPath, TRACE_COLUMNS);
  const t = table.data.get("t")!;
  const x1 = table.data.get("x1")!;
  const x2 = table.data.get("x2")!;

  const scene = new Scene(940, 460);
  scene.text(470, 24, `orbit trace (${table.rows} samples)`, {
    size: 14, anchor: "middle",
  });

  // left panel: the fall x2(t)
  const pxL = linearScale([t[0], t[t.length - 1] || 1], [70, 430]);
  const pyL = linearScale(padded(x2), [410, 60]);
  scene.axes(pxL, pyL, {
    xTicks: niceTicks(pxL.domain[0], pxL.domain[1], 5),
    yTicks: niceTicks(pyL.domain[0], pyL.domain[1], 5),
    xLabel: "time",
    yLabel: "x2",
  });
  scene.polyline(t.map((v, i) => [pxL(v), pyL(x2[i])] as [number, number]), "#2980b9");

  // right panel: the path (x1, x2)
  const pxR = linearScale(padded(x1), [560, 900]);
  const pyR = linearScale(padded(x2), [410, 60]);
  scene.axes(pxR, pyR, {
    xTicks: niceTicks(pxR.domain[0], pxR.domain[1], 5),
    yTicks: niceTicks(pyR.domain[0], pyR.domain[1], 5),
    xLabel: "x1",
    yLabel: "x2",
  });
  scene.polyline(x1.map((v, i) => [pxR(v), pyR(x2[i])] as [number, number]), "#c0392b");
  scene.circle(pxR(x1[0]), pyR(x2[0]), 3, "#111");
  scene.text(pxR(x1[0]) + 6, pyR(x2[0]) - 6, "start", { size: 10 });

  writeFileSync(outPath, scene.render());
}
