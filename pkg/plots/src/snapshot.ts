/**
 * Field snapshot figure: filled cell map over the slab with a colorbar and
 * the snapshot time in the title.
 *
 * Quantities: rho_plus, rho_minus, total (their sum), and temperature.
 * Snapshots carry no temperature constants, so temperature is rendered as
 * the hot-species weight rho+/(rho+ + rho-): an affine rescaling of the
 * physical temperature with hot = 1, cold = 0 (the shape is identical).
 */

import { writeFileSync } from "fs";
import { FormatError } from "./errors";
import { readSnapshot, Snapshot } from "./pfld";
import { Scene, colormap, fmt, linearScale, niceTicks } from "./svg";

export const QUANTITIES = ["rho_plus", "rho_minus", "total", "temperature"] as const;
export type Quantity = (typeof QUANTITIES)[number];

function extract(snap: Snapshot, quantity: Quantity): Float64Array {
  const n = snap.n1 * snap.n2;
  const out = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    const p = snap.rhoPlus[i];
    const m = snap.rhoMinus[i];
    switch (quantity) {
      case "rho_plus":
        out[i] = p;
        break;
      case "rho_minus":
        out[i] = m;
        break;
      case "total":
        out[i] = p + m;
        break;
      case "temperature": {
        const total = p + m;
        out[i] = total > 1e-12 ? p / total : NaN;
        break;
      }
    }
  }
  return out;
}

export function renderSnapshot(inPath: string, outPath: string, quantity: Quantity): void {
  if (!QUANTITIES.includes(quantity)) {
    throw new FormatError(
      `unknown quantity '${quantity}'; expected one of ${QUANTITIES.join(", ")}`,
    );
  }
  const snap = readSnapshot(inPath);
  const values = extract(snap, quantity);
  const finite = Array.from(values).filter(Number.isFinite);
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }

  const panel = 420;
  const scene = new Scene(panel + 170, panel + 110);
  const x0 = 70;
  const y0 = 50;
  const label = quantity === "temperature" ? "temperature (hot=1, cold=0)" : quantity;
  scene.text((x0 + x0 + panel) / 2, 28, `${label} at t = ${fmt(snap.time)}`, {
    size: 14, anchor: "middle",
  });

  const color = colormap(quantity);
  const cw = panel / snap.n2;
  const ch = panel / snap.n1;
  for (let i = 0; i < snap.n1; i++) {
    for (let j = 0; j < snap.n2; j++) {
      const v = values[i * snap.n2 + j];
      const fill = Number.isFinite(v) ? color((v - lo) / (hi - lo)) : "rgb(255,255,255)";
      // x2 runs horizontally, x1 vertically with the inner wall at the bottom
      scene.rect(x0 + j * cw, y0 + (snap.n1 - 1 - i) * ch, cw + 0.5, ch + 0.5, fill);
    }
  }

  const px = linearScale([0, snap.box], [x0, x0 + panel]);
  const py = linearScale([0, snap.box], [y0 + panel, y0]);
  scene.axes(px, py, {
    xTicks: niceTicks(0, snap.box, 5),
    yTicks: niceTicks(0, snap.box, 5),
    xLabel: "x2 (periodic)",
    yLabel: "x1 (walls)",
  });

  const barX = x0 + panel + 30;
  const steps = 64;
  for (let s = 0; s < steps; s++) {
    const y = y0 + panel - ((s + 1) * panel) / steps;
    scene.rect(barX, y, 18, panel / steps + 0.5, color((s + 0.5) / steps));
  }
  scene.text(barX + 24, y0 + panel, fmt(lo), { size: 10 });
  scene.text(barX + 24, y0 + 10, fmt(hi), { size: 10 });
  writeFileSync(outPath, scene.render());
}
