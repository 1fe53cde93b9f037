/**
 * Gradient-sweep phase diagram: predicted and measured growth rates on top,
 * the worst deviation amplification below, with the linear-instability
 * threshold 4/(5 pi^2) and the certified-confinement threshold 2/pi^2
 * marked.  Rows whose status is not "ok" are flagged.
 */

import { writeFileSync } from "fs";
import { readCsv } from "./csv";
import { Scene, fmt, linearScale, niceTicks } from "./svg";

const SWEEP_COLUMNS = [
  "gradient", "predicted_rate", "measured_rate", "max_amplification", "status",
];

const LINEAR_THRESHOLD = 4 / (5 * Math.PI * Math.PI);
const CERTIFIED_THRESHOLD = 2 / (Math.PI * Math.PI);

export function renderSweep(inPath: string, outPath: string): void {
  const table = readCsv(inPath, SWEEP_COLUMNS, ["status"]);
  const gradient = table.data.get("gradient")!;
  const predicted = table.data.get("predicted_rate")!;
  const measured = table.data.get("measured_rate")!;
  const amplification = table.data.get("max_amplification")!;
  const status = table.strings.get("status")!;

  const gLo = Math.min(...gradient, LINEAR_THRESHOLD * 0.8);
  const gHi = Math.max(...gradient, CERTIFIED_THRESHOLD * 1.1);
  const rateHi = Math.max(...predicted, ...measured.filter(Number.isFinite), 1e-3) * 1.15;
  const ampHi = Math.max(...amplification.filter(Number.isFinite), 1.0) * 1.15;

  const scene = new Scene(760, 620);
  scene.text(380, 24, "gradient sweep: growth and confinement", {
    size: 14, anchor: "middle",
  });

  const px = linearScale([gLo, gHi], [80, 710]);
  const pyRate = linearScale([0, rateHi], [280, 60]);
  scene.axes(px, pyRate, {
    xTicks: niceTicks(gLo, gHi, 6),
    yTicks: niceTicks(0, rateHi, 4),
    xLabel: "",
    yLabel: "growth rate",
  });
  const pyAmp = linearScale([0, ampHi], [560, 340]);
  scene.axes(px, pyAmp, {
    xTicks: niceTicks(gLo, gHi, 6),
    yTicks: niceTicks(0, ampHi, 4),
    xLabel: "temperature gradient",
    yLabel: "max dev^2 amplification",
  });

  for (const [value, label] of [
    [LINEAR_THRESHOLD, "4/(5 pi^2)"],
    [CERTIFIED_THRESHOLD, "2/pi^2"],
  ] as Array<[number, string]>) {
    for (const [top, bottom] of [[60, 280], [340, 560]]) {
      scene.line(px(value), top, px(value), bottom, "#999", 1, "4 3");
    }
    scene.text(px(value), 52, label, { size: 10, anchor: "middle", fill: "#666" });
  }

  const order = gradient.map((_, i) => i).sort((a, b) => gradient[a] - gradient[b]);
  const okOrder = order.filter((i) => status[i] === "ok");
  scene.polyline(
    okOrder.map((i) => [px(gradient[i]), pyRate(predicted[i])] as [number, number]),
    "#111", 1,
  );
  for (const i of okOrder) {
    scene.circle(px(gradient[i]), pyRate(predicted[i]), 3, "#111");
    scene.circle(px(gradient[i]), pyRate(measured[i]), 4, "#c0392b");
    scene.circle(px(gradient[i]), pyAmp(amplification[i]), 4, "#2980b9");
  }
  for (const i of order) {
    if (status[i] !== "ok") {
      scene.text(px(gradient[i]), pyRate(0) - 6, "x", {
        size: 14, anchor: "middle", fill: "#c0392b",
      });
      scene.text(px(gradient[i]), 300, `failed: ${status[i]}`, {
        size: 9, anchor: "middle", fill: "#c0392b",
      });
    }
  }
  scene.text(600, 70, "predicted (line), measured (red)", { size: 11, fill: "#444" });
  scene.text(600, 352, `amplification, ${table.rows} runs`, { size: 11, fill: "#444" });
  writeFileSync(outPath, scene.render());
}
