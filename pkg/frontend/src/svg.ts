/** Tiny SVG builder: enough shapes and scales for bar, box and ring figures. */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export class SvgCanvas {
  readonly width: number;
  readonly height: number;
  private parts: string[] = [];

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
  }

  rect(x: number, y: number, w: number, h: number, fill: string, opacity = 1): this {
    this.parts.push(
      `<rect x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${w.toFixed(2)}" ` +
      `height="${h.toFixed(2)}" fill="${fill}" fill-opacity="${opacity}"/>`,
    );
    return this;
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke = "#444", width = 1): this {
    this.parts.push(
      `<line x1="${x1.toFixed(2)}" y1="${y1.toFixed(2)}" x2="${x2.toFixed(2)}" ` +
      `y2="${y2.toFixed(2)}" stroke="${stroke}" stroke-width="${width}"/>`,
    );
    return this;
  }

  circle(cx: number, cy: number, r: number, fill: string, stroke = "none"): this {
    this.parts.push(
      `<circle cx="${cx.toFixed(2)}" cy="${cy.toFixed(2)}" r="${r.toFixed(2)}" ` +
      `fill="${fill}" stroke="${stroke}"/>`,
    );
    return this;
  }

  text(x: number, y: number, content: string, size = 11, anchor = "middle", fill = "#222"): this {
    this.parts.push(
      `<text x="${x.toFixed(2)}" y="${y.toFixed(2)}" font-size="${size}" ` +
      `text-anchor="${anchor}" fill="${fill}" font-family="sans-serif">${esc(content)}</text>`,
    );
    return this;
  }

  render(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" ` +
      `height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">\n` +
      `<rect width="${this.width}" height="${this.height}" fill="white"/>\n` +
      this.parts.join("\n") +
      "\n</svg>\n"
    );
  }
}

export const PROTOCOL_COLORS: Record<string, string> = {
  tdma: "#1f77b4",
  aloha: "#ff7f0e",
  csma: "#2ca02c",
};

export const PROTOCOL_LABELS: Record<string, string> = {
  tdma: "TDMA",
  aloha: "slotted Aloha",
  csma: "CSMA/CA",
};

export interface BarGroup {
  label: string;
  bars: { label: string; value: number; color: string; opacity?: number }[];
}

/** Grouped vertical bar chart with a y axis and group labels. */
export function barChart(groups: BarGroup[], opts: {
  width?: number; height?: number; yLabel?: string; yMax?: number;
} = {}): string {
  const width = opts.width ?? 640;
  const height = opts.height ?? 360;
  const margin = { left: 52, right: 12, top: 16, bottom: 42 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const values = groups.flatMap((g) => g.bars.map((b) => b.value));
  const yMax = opts.yMax ?? Math.max(...values, 0) * 1.08;
  const y = linearScale([0, yMax || 1], [margin.top + plotH, margin.top]);
  const canvas = new SvgCanvas(width, height);

  for (let tick = 0; tick <= 4; tick += 1) {
    const value = (yMax * tick) / 4;
    canvas.line(margin.left, y(value), width - margin.right, y(value), "#ddd");
    canvas.text(margin.left - 6, y(value) + 4, value.toFixed(2), 10, "end");
  }
  if (opts.yLabel) {
    canvas.text(margin.left - 40, margin.top - 4, opts.yLabel, 11, "start");
  }

  const groupW = plotW / Math.max(groups.length, 1);
  groups.forEach((group, gi) => {
    const n = group.bars.length;
    const barW = (groupW * 0.75) / Math.max(n, 1);
    group.bars.forEach((bar, bi) => {
      const x = margin.left + gi * groupW + groupW * 0.125 + bi * barW;
      canvas.rect(x, y(bar.value), barW * 0.92, y(0) - y(bar.value), bar.color,
        bar.opacity ?? 1);
    });
    canvas.text(margin.left + gi * groupW + groupW / 2, height - margin.bottom + 16,
      group.label, 11);
  });
  canvas.line(margin.left, y(0), width - margin.right, y(0), "#444");
  return canvas.render();
}

export interface BoxSeries {
  label: string;
  color: string;
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
}

/** Box-and-whisker chart from precomputed statistics. */
export function boxChart(series: BoxSeries[], opts: {
  width?: number; height?: number; yLabel?: string;
} = {}): string {
  const width = opts.width ?? 520;
  const height = opts.height ?? 360;
  const margin = { left: 52, right: 12, top: 16, bottom: 48 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const top = Math.max(...series.map((s) => s.max), 1) * 1.08;
  const y = linearScale([0, top], [margin.top + plotH, margin.top]);
  const canvas = new SvgCanvas(width, height);

  for (let tick = 0; tick <= 4; tick += 1) {
    const value = (top * tick) / 4;
    canvas.line(margin.left, y(value), width - margin.right, y(value), "#ddd");
    canvas.text(margin.left - 6, y(value) + 4, value.toFixed(1), 10, "end");
  }
  if (opts.yLabel) {
    canvas.text(margin.left - 40, margin.top - 4, opts.yLabel, 11, "start");
  }

  const step = plotW / series.length;
  series.forEach((s, i) => {
    const cx = margin.left + step * (i + 0.5);
    const half = Math.min(26, step * 0.3);
    canvas.line(cx, y(s.min), cx, y(s.q1), "#444");
    canvas.line(cx, y(s.q3), cx, y(s.max), "#444");
    canvas.line(cx - half * 0.6, y(s.min), cx + half * 0.6, y(s.min), "#444");
    canvas.line(cx - half * 0.6, y(s.max), cx + half * 0.6, y(s.max), "#444");
    canvas.rect(cx - half, y(s.q3), 2 * half, Math.max(y(s.q1) - y(s.q3), 0.5),
      s.color, 0.55);
    canvas.line(cx - half, y(s.median), cx + half, y(s.median), "#111", 2);
    for (const [li, line] of s.label.split("\n").entries()) {
      canvas.text(cx, height - margin.bottom + 16 + li * 13, line, 11);
    }
  });
  return canvas.render();
}
