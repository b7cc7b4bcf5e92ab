/**
 * Minimal SVG chart primitives: panels with linear or log axes, polylines,
 * scatter dots, dashed reference lines, legends. No dependencies; the
 * output is a plain standalone SVG string.
 */

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((n) => n >= rough) ?? rough;
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let k = 0; ; k++) {
    const v = start + k * step;
    if (v > max + step * 0.01) break;
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/** The exact decimal double 10^e (Math.pow can land one ulp off). */
function pow10(e: number): number {
  return Number(`1e${e}`);
}

/** Powers of ten covering [min, max]. */
export function logTicks(min: number, max: number): number[] {
  const lo = Math.floor(Math.log10(min) + 1e-12);
  const hi = Math.ceil(Math.log10(max) - 1e-12);
  const ticks: number[] = [];
  for (let e = lo; e <= hi; e++) ticks.push(pow10(e));
  return ticks;
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) {
    let e = Math.floor(Math.log10(a) + 1e-12);
    let m = v / pow10(e);
    if (Math.abs(m) >= 10) { e += 1; m /= 10; }
    if (Math.abs(Math.abs(m) - 1) < 1e-9) return `${m < 0 ? "-" : ""}1e${e}`;
    return `${m.toPrecision(2)}e${e}`;
  }
  return v % 1 === 0 ? String(v) : String(parseFloat(v.toPrecision(3)));
}

export const PALETTE = ["#4361ee", "#e63946", "#2d6a4f", "#f77f00", "#7209b7", "#3a86ff"];

// ---------------------------------------------------------------------------
// Panel: one plotting area with its own scales
// ---------------------------------------------------------------------------

export interface PanelOpts {
  x0: number; // pixel rect
  y0: number;
  width: number;
  height: number;
  xRange: [number, number];
  yRange: [number, number];
  xLog?: boolean;
  yLog?: boolean;
  xLabel?: string;
  yLabel?: string;
  title?: string;
  /** tick values to draw on x; default: nice/log ticks from the range */
  xTicks?: number[];
  equalAspect?: boolean;
}

export class Panel {
  readonly o: PanelOpts;
  private body = "";

  constructor(o: PanelOpts) {
    this.o = { ...o };
    if (o.equalAspect) {
      // widen the shorter data span so units per pixel match on both axes
      const [xa, xb] = this.o.xRange;
      const [ya, yb] = this.o.yRange;
      const ux = (xb - xa) / o.width;
      const uy = (yb - ya) / o.height;
      const u = Math.max(ux, uy);
      const cx = (xa + xb) / 2;
      const cy = (ya + yb) / 2;
      this.o.xRange = [cx - (u * o.width) / 2, cx + (u * o.width) / 2];
      this.o.yRange = [cy - (u * o.height) / 2, cy + (u * o.height) / 2];
    }
  }

  xOf(v: number): number {
    const [a, b] = this.o.xRange;
    const t = this.o.xLog
      ? (Math.log10(v) - Math.log10(a)) / (Math.log10(b) - Math.log10(a) || 1)
      : (v - a) / (b - a || 1);
    return this.o.x0 + t * this.o.width;
  }

  yOf(v: number): number {
    const [a, b] = this.o.yRange;
    const t = this.o.yLog
      ? (Math.log10(v) - Math.log10(a)) / (Math.log10(b) - Math.log10(a) || 1)
      : (v - a) / (b - a || 1);
    return this.o.y0 + this.o.height - t * this.o.height;
  }

  polyline(xs: number[], ys: number[], color: string, width = 1.2, dash?: string): void {
    const pts = xs.map((x, i) => `${this.xOf(x).toFixed(1)},${this.yOf(ys[i]).toFixed(1)}`).join(" ");
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.body += `<polyline fill="none" stroke="${color}" stroke-width="${width}"${d} points="${pts}"/>\n`;
  }

  dots(xs: number[], ys: number[], color: string, r = 1.4, opacity = 0.75): void {
    for (let i = 0; i < xs.length; i++) {
      this.body += `<circle cx="${this.xOf(xs[i]).toFixed(1)}" cy="${this.yOf(ys[i]).toFixed(1)}" r="${r}" fill="${color}" fill-opacity="${opacity}"/>\n`;
    }
  }

  markers(xs: number[], ys: number[], color: string, r = 2.2): void {
    for (let i = 0; i < xs.length; i++) {
      this.body += `<circle cx="${this.xOf(xs[i]).toFixed(1)}" cy="${this.yOf(ys[i]).toFixed(1)}" r="${r}" fill="${color}"/>\n`;
    }
  }

  /** Data-space line segments (x1,y1,x2,y2), e.g. contour fragments. */
  segments(segs: number[][], color: string, width = 0.9): void {
    let d = "";
    for (const [x1, y1, x2, y2] of segs) {
      d += `M${this.xOf(x1).toFixed(1)} ${this.yOf(y1).toFixed(1)}L${this.xOf(x2).toFixed(1)} ${this.yOf(y2).toFixed(1)}`;
    }
    this.body += `<path fill="none" stroke="${color}" stroke-width="${width}" d="${d}"/>\n`;
  }

  frame(): string {
    const { x0, y0, width: w, height: h } = this.o;
    let s = "";
    const xTicks =
      this.o.xTicks ??
      (this.o.xLog ? logTicks(...this.o.xRange) : niceTicks(...this.o.xRange, 5));
    const yTicks = this.o.yLog ? logTicks(...this.o.yRange) : niceTicks(...this.o.yRange, 5);
    // grid
    for (const v of yTicks) {
      const y = this.yOf(v).toFixed(1);
      s += `<line x1="${x0}" y1="${y}" x2="${x0 + w}" y2="${y}" stroke="#eee" stroke-width="0.5"/>\n`;
    }
    if (this.o.xLog) {
      for (const v of xTicks) {
        const x = this.xOf(v).toFixed(1);
        s += `<line x1="${x}" y1="${y0}" x2="${x}" y2="${y0 + h}" stroke="#eee" stroke-width="0.5"/>\n`;
      }
    }
    s += this.body;
    // axes
    s += `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y0 + h}" stroke="#333" stroke-width="0.7"/>\n`;
    s += `<line x1="${x0}" y1="${y0 + h}" x2="${x0 + w}" y2="${y0 + h}" stroke="#333" stroke-width="0.7"/>\n`;
    for (const v of xTicks) {
      if (v < this.o.xRange[0] - 1e-12 || v > this.o.xRange[1] + 1e-12) continue;
      const x = this.xOf(v).toFixed(1);
      s += `<line x1="${x}" y1="${y0 + h}" x2="${x}" y2="${y0 + h + 3}" stroke="#333" stroke-width="0.5"/>\n`;
      s += `<text x="${x}" y="${y0 + h + 12}" text-anchor="middle" font-size="7" fill="#666">${esc(fmtTick(v))}</text>\n`;
    }
    for (const v of yTicks) {
      if (v < this.o.yRange[0] / 1.0000001 || v > this.o.yRange[1] * 1.0000001) continue;
      const y = this.yOf(v);
      s += `<line x1="${x0 - 3}" y1="${y.toFixed(1)}" x2="${x0}" y2="${y.toFixed(1)}" stroke="#333" stroke-width="0.5"/>\n`;
      s += `<text x="${x0 - 5}" y="${(y + 2.5).toFixed(1)}" text-anchor="end" font-size="7" fill="#666">${esc(fmtTick(v))}</text>\n`;
    }
    if (this.o.xLabel) {
      s += `<text x="${x0 + w / 2}" y="${y0 + h + 26}" text-anchor="middle" font-size="8" fill="#444">${esc(this.o.xLabel)}</text>\n`;
    }
    if (this.o.yLabel) {
      const yc = y0 + h / 2;
      s += `<text x="${x0 - 40}" y="${yc}" text-anchor="middle" font-size="8" fill="#444" transform="rotate(-90,${x0 - 40},${yc})">${esc(this.o.yLabel)}</text>\n`;
    }
    if (this.o.title) {
      s += `<text x="${x0 + w / 2}" y="${y0 - 6}" text-anchor="middle" font-size="9" font-weight="600" fill="#222">${esc(this.o.title)}</text>\n`;
    }
    return s;
  }
}

// ---------------------------------------------------------------------------
// Document assembly
// ---------------------------------------------------------------------------

export interface LegendEntry {
  label: string;
  color: string;
  dash?: string;
}

export function legend(x: number, y: number, entries: LegendEntry[]): string {
  const w = Math.max(...entries.map((e) => e.label.length)) * 4.6 + 26;
  const h = entries.length * 11 + 6;
  let s = `<rect x="${x}" y="${y}" width="${w}" height="${h}" rx="2" fill="white" fill-opacity="0.85" stroke="#ddd" stroke-width="0.5"/>\n`;
  entries.forEach((e, i) => {
    const yy = y + 9 + i * 11;
    const d = e.dash ? ` stroke-dasharray="${e.dash}"` : "";
    s += `<line x1="${x + 4}" y1="${yy}" x2="${x + 18}" y2="${yy}" stroke="${e.color}" stroke-width="1.4"${d}/>\n`;
    s += `<text x="${x + 22}" y="${yy + 2.5}" font-size="7" fill="#444">${esc(e.label)}</text>\n`;
  });
  return s;
}

export function document(width: number, height: number, title: string, body: string): string {
  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${width}" height="${height}" fill="#fff"/>\n`;
  s += `<text x="10" y="14" font-size="10" font-weight="600" fill="#222">${esc(title)}</text>\n`;
  s += body;
  s += `</svg>\n`;
  return s;
}
