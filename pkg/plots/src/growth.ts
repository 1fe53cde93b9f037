/**
 * Growth-curve figure: the two deviation norms and the field-energy norm
 * against time on a log axis, with an optional fitted-slope overlay.
 */

import { writeFileSync } from "fs";
import { readCsv } from "./csv";
import { FormatError } from "./errors";
import { Scene, decadeTicks, linearScale, logScale, niceTicks } from "./svg";

export const DIAGNOSTIC_COLUMNS = [
  "time", "dev_plus", "dev_minus", "elec", "e_good", "f_bad", "gap", "mass",
];

interface Series {
  label: string;
  color: string;
  values: number[];
}

export function renderGrowth(inPath: string, outPath: string, fit: boolean): void {
  const table = readCsv(inPath, DIAGNOSTIC_COLUMNS);
  if (table.columns.join(",") !== DIAGNOSTIC_COLUMNS.join(",")) {
    throw new FormatError(
      `${inPath}: columns are '${table.columns.join(",")}', expected ` +
        `'${DIAGNOSTIC_COLUMNS.join(",")}'`,
    );
  }
  const time = table.data.get("time")!;
  const devPlus = table.data.get("dev_plus")!;
  const devMinus = table.data.get("dev_minus")!;
  const elecRoot = table.data.get("elec")!.map((v) => Math.sqrt(Math.max(v, 0)));

  const series: Series[] = [
    { label: "|rho+ - mu+|", color: "#c0392b", values: devPlus },
    { label: "|rho- - mu-|", color: "#2980b9", values: devMinus },
    { label: "|E|", color: "#27ae60", values: elecRoot },
  ];

  const positives = series.flatMap((s) => s.values.filter((v) => v > 0));
  const floor = positives.length > 0 ? Math.min(...positives) : 1e-16;
  const ceil = positives.length > 0 ? Math.max(...positives) : 1;
  const lo = Math.pow(10, Math.floor(Math.log10(floor)));
  const hi = Math.pow(10, Math.ceil(Math.log10(ceil * 1.001)));

  const scene = new Scene(720, 480);
  const px = linearScale([time[0], time[time.length - 1] || 1], [70, 690]);
  const py = logScale([lo, hi], [430, 50]);
  scene.text(360, 24, `growth curves (${table.rows} records)`, {
    size: 14, anchor: "middle",
  });
  scene.axes(px, py, {
    xTicks: niceTicks(px.domain[0], px.domain[1]),
    yTicks: decadeTicks(lo, hi),
    xLabel: "time",
    yLabel: "L2 norm (log scale)",
    yTickFormat: (v) => `1e${Math.round(Math.log10(v))}`,
  });

  series.forEach((s, i) => {
    const pts: Array<[number, number]> = [];
    s.values.forEach((v, j) => {
      if (v > 0) pts.push([px(time[j]), py(v)]);
    });
    scene.polyline(pts, s.color);
    scene.text(580, 60 + 16 * i, s.label, { size: 11, fill: s.color });
  });

  if (fit) {
    annotateFit(scene, px, py, time, devPlus, devMinus);
  }
  writeFileSync(outPath, scene.render());
}

function annotateFit(
  scene: Scene,
  px: (v: number) => number,
  py: (v: number) => number,
  time: number[],
  devPlus: number[],
  devMinus: number[],
): void {
  const dev = devPlus.map((v, i) => Math.hypot(v, devMinus[i]));
  const start = dev[0];
  if (!(start > 0)) {
    scene.text(80, 60, "fit: initial deviation is zero", { size: 11, fill: "#555" });
    return;
  }
  let iLo = -1;
  let iHi = -1;
  dev.forEach((v, i) => {
    if (iLo < 0 && v >= 10 * start) iLo = i;
    if (iHi < 0 && v >= 1e3 * start) iHi = i;
  });
  if (iLo < 0 || iHi < 0 || iHi - iLo < 4) {
    scene.text(80, 60, "fit: no exponential window found", { size: 11, fill: "#555" });
    return;
  }
  const ts = time.slice(iLo, iHi + 1);
  const ys = dev.slice(iLo, iHi + 1).map(Math.log);
  const n = ts.length;
  const mt = ts.reduce((a, b) => a + b, 0) / n;
  const my = ys.reduce((a, b) => a + b, 0) / n;
  let num = 0;
  let den = 0;
  for (let i = 0; i < n; i++) {
    num += (ts[i] - mt) * (ys[i] - my);
    den += (ts[i] - mt) * (ts[i] - mt);
  }
  const rate = num / den;
  const at = (t: number) => Math.exp(my + rate * (t - mt));
  scene.polyline(
    [
      [px(ts[0]), py(at(ts[0]))],
      [px(ts[n - 1]), py(at(ts[n - 1]))],
    ],
    "#111",
    1,
  );
  scene.text(80, 60, `fitted rate ${rate.toFixed(5)}`, { size: 12, fill: "#111" });
}
