/**
 * Minimal deterministic SVG scene builder: linear and log scales, axes with
 * tick labels, polylines, cell heatmaps, and fixed colormaps.  Everything
 * is emitted as plain strings so identical inputs yield identical bytes.
 */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const lo = Math.log10(domain[0]);
  const hi = Math.log10(domain[1]);
  const span = hi - lo || 1;
  const [r0, r1] = range;
  const fn = ((v: number) => r0 + ((Math.log10(v) - lo) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 5, 10].map((m) => m * mag);
  const step = candidates.find((s) => (hi - lo) / s <= count) ?? candidates[3];
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + 1e-12 * Math.abs(hi); v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo)); e <= Math.floor(Math.log10(hi)); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length > 0 ? ticks : [lo];
}

export function fmt(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e4 || abs < 1e-3) return value.toExponential(1);
  return String(parseFloat(value.toPrecision(4)));
}

const esc = (s: string) => s.replace(/&/g, "&amp;").replace(/</g, "&lt;");

export class Scene {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  raw(s: string): void {
    this.parts.push(s);
  }

  text(x: number, y: number, s: string, opts: { size?: number; anchor?: string; fill?: string } = {}): void {
    const { size = 12, anchor = "start", fill = "#222" } = opts;
    this.parts.push(
      `<text x="${x.toFixed(1)}" y="${y.toFixed(1)}" font-size="${size}" ` +
        `text-anchor="${anchor}" fill="${fill}">${esc(s)}</text>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke = "#888", width = 1, dash = ""): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" x2="${x2.toFixed(1)}" ` +
        `y2="${y2.toFixed(1)}" stroke="${stroke}" stroke-width="${width}"${d}/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5): void {
    if (points.length === 0) return;
    const pts = points.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  circle(x: number, y: number, r: number, fill: string): void {
    this.parts.push(
      `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="${r}" fill="${fill}"/>`,
    );
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(
      `<rect x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${w.toFixed(2)}" ` +
        `height="${h.toFixed(2)}" fill="${fill}"/>`,
    );
  }

  /** Frame, ticks, and labels for one panel. */
  axes(
    px: Scale,
    py: Scale,
    opts: {
      xTicks: number[];
      yTicks: number[];
      xLabel: string;
      yLabel: string;
      yTickFormat?: (v: number) => string;
    },
  ): void {
    const [x0, x1] = px.range;
    const [y1, y0] = py.range; // py maps up: range [bottom, top]
    this.parts.push(
      `<rect x="${x0}" y="${y0}" width="${x1 - x0}" height="${y1 - y0}" ` +
        `fill="none" stroke="#222" stroke-width="1"/>`,
    );
    const fmty = opts.yTickFormat ?? fmt;
    for (const t of opts.xTicks) {
      const x = px(t);
      this.line(x, y1, x, y1 + 4, "#222");
      this.text(x, y1 + 16, fmt(t), { size: 10, anchor: "middle" });
    }
    for (const t of opts.yTicks) {
      const y = py(t);
      this.line(x0 - 4, y, x0, y, "#222");
      this.text(x0 - 6, y + 3, fmty(t), { size: 10, anchor: "end" });
    }
    this.text((x0 + x1) / 2, y1 + 32, opts.xLabel, { anchor: "middle" });
    this.parts.push(
      `<text x="${(x0 - 40).toFixed(1)}" y="${((y0 + y1) / 2).toFixed(1)}" font-size="12" ` +
        `text-anchor="middle" fill="#222" transform="rotate(-90 ${(x0 - 40).toFixed(1)} ` +
        `${((y0 + y1) / 2).toFixed(1)})">${esc(opts.yLabel)}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

type Stop = [number, number, number];

const VIRIDIS: Stop[] = [
  [68, 1, 84], [71, 44, 122], [59, 81, 139], [44, 113, 142], [33, 144, 141],
  [39, 173, 129], [92, 200, 99], [170, 220, 50], [253, 231, 37],
];

const INFERNO: Stop[] = [
  [0, 0, 4], [40, 11, 84], [101, 21, 110], [159, 42, 99], [212, 72, 66],
  [245, 125, 21], [250, 193, 39], [252, 255, 164],
];

function interpolate(stops: Stop[], t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const pos = clamped * (stops.length - 1);
  const i = Math.min(stops.length - 2, Math.floor(pos));
  const frac = pos - i;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * frac);
  const [r, g, b] = [0, 1, 2].map((c) => mix(stops[i][c], stops[i + 1][c]));
  return `rgb(${r},${g},${b})`;
}

/** Fixed colormap per rendered quantity, for diffable output. */
export function colormap(quantity: string): (t: number) => string {
  const stops = quantity === "temperature" ? INFERNO : VIRIDIS;
  return (t) => interpolate(stops, t);
}
