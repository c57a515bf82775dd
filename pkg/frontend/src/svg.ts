/** Small SVG builder: enough for line panels, heatmap panels and axis chrome. */

export interface PanelBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface Series {
  xs: number[];
  ys: number[];
  color: string;
  dashed?: boolean;
}

const esc = (s: string) => s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function openSvg(width: number, height: number): string[] {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
  ];
}

export function closeSvg(parts: string[]): string {
  parts.push("</svg>");
  return parts.join("\n");
}

export function linearScale(domain: [number, number], range: [number, number]) {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

function ticks(lo: number, hi: number, count = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(lo + ((hi - lo) * i) / (count - 1));
  }
  return out;
}

const fmt = (v: number) => {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e4 || a < 1e-2)) return v.toExponential(1);
  return String(Math.round(v * 1000) / 1000);
};

/** Axis frame with tick labels and axis titles; returns SVG fragments. */
export function axes(
  box: PanelBox,
  xDomain: [number, number],
  yDomain: [number, number],
  xLabel: string,
  yLabel: string,
  title?: string
): string[] {
  const parts: string[] = [`<g class="axes">`];
  parts.push(
    `<rect x="${box.x}" y="${box.y}" width="${box.width}" height="${box.height}" fill="none" stroke="black" stroke-width="1"/>`
  );
  const sx = linearScale(xDomain, [box.x, box.x + box.width]);
  const sy = linearScale(yDomain, [box.y + box.height, box.y]);
  for (const t of ticks(xDomain[0], xDomain[1])) {
    const px = sx(t);
    parts.push(`<line x1="${px}" y1="${box.y + box.height}" x2="${px}" y2="${box.y + box.height + 4}" stroke="black"/>`);
    parts.push(
      `<text x="${px}" y="${box.y + box.height + 15}" font-size="9" text-anchor="middle">${fmt(t)}</text>`
    );
  }
  for (const t of ticks(yDomain[0], yDomain[1])) {
    const py = sy(t);
    parts.push(`<line x1="${box.x - 4}" y1="${py}" x2="${box.x}" y2="${py}" stroke="black"/>`);
    parts.push(
      `<text x="${box.x - 6}" y="${py + 3}" font-size="9" text-anchor="end">${fmt(t)}</text>`
    );
  }
  parts.push(
    `<text class="axis-label" x="${box.x + box.width / 2}" y="${box.y + box.height + 30}" font-size="11" text-anchor="middle">${esc(xLabel)}</text>`
  );
  parts.push(
    `<text class="axis-label" x="${box.x - 38}" y="${box.y + box.height / 2}" font-size="11" text-anchor="middle" ` +
      `transform="rotate(-90 ${box.x - 38} ${box.y + box.height / 2})">${esc(yLabel)}</text>`
  );
  if (title) {
    parts.push(
      `<text x="${box.x + box.width / 2}" y="${box.y - 6}" font-size="11" text-anchor="middle">${esc(title)}</text>`
    );
  }
  parts.push("</g>");
  return parts;
}

/** Polyline for one series clipped into the panel box. */
export function polyline(
  box: PanelBox,
  xDomain: [number, number],
  yDomain: [number, number],
  series: Series
): string {
  const sx = linearScale(xDomain, [box.x, box.x + box.width]);
  const sy = linearScale(yDomain, [box.y + box.height, box.y]);
  const pts = series.xs
    .map((x, i) => `${sx(x).toFixed(2)},${sy(series.ys[i]).toFixed(2)}`)
    .join(" ");
  const dash = series.dashed ? ` stroke-dasharray="5,3"` : "";
  return `<polyline points="${pts}" fill="none" stroke="${series.color}" stroke-width="1.2"${dash}/>`;
}

export function horizontalLine(
  box: PanelBox,
  yDomain: [number, number],
  y: number,
  color: string
): string {
  const sy = linearScale(yDomain, [box.y + box.height, box.y]);
  const py = sy(y);
  return `<line x1="${box.x}" y1="${py}" x2="${box.x + box.width}" y2="${py}" stroke="${color}" stroke-width="0.8" stroke-dasharray="2,3"/>`;
}

/** Embed a raster heatmap (pre-encoded PNG data URI) into a panel. */
export function imagePanel(box: PanelBox, dataUri: string): string {
  return (
    `<image class="heatmap" x="${box.x}" y="${box.y}" width="${box.width}" height="${box.height}" ` +
    `preserveAspectRatio="none" style="image-rendering:pixelated" href="${dataUri}"/>`
  );
}

export function text(x: number, y: number, size: number, content: string, anchor = "middle"): string {
  return `<text x="${x}" y="${y}" font-size="${size}" text-anchor="${anchor}">${esc(content)}</text>`;
}
