import { Table, column } from "./csv.js";
import { diverging, symmetricLimit } from "./colormap.js";
import { pngDataUri } from "./png.js";
import { PanelBox, axes, closeSvg, imagePanel, linearScale, openSvg, text } from "./svg.js";

export interface WignerPanel {
  /** sidecar metadata written next to each grid CSV */
  t: number;
  kind: string;
  grid: { re_min: number; re_max: number; im_min: number; im_max: number; n_re: number; n_im: number };
  table: Table;
  path: string;
}

const PANEL = { width: 190, height: 190 };
const MARGIN = { left: 64, right: 26, top: 34, bottom: 50 };
const GAP = { x: 44, y: 34 };

/** Reshape the (re, im, w) rows into a row-major [im][re] pixel grid. */
export function pixelGrid(panel: WignerPanel): number[][] {
  const { n_re, n_im } = panel.grid;
  const w = column(panel.table, "w_value", panel.path);
  if (w.length !== n_re * n_im) {
    throw new Error(`${panel.path}: ${w.length} rows, expected ${n_re * n_im}`);
  }
  // CSV order: re outer, im inner; pixels are scanned top (im_max) to bottom
  const rows: number[][] = [];
  for (let j = n_im - 1; j >= 0; j--) {
    const row: number[] = [];
    for (let i = 0; i < n_re; i++) {
      row.push(w[i * n_im + j]);
    }
    rows.push(row);
  }
  return rows;
}

function rasterize(pixels: number[][], limit: number, flipX: boolean): string {
  const height = pixels.length;
  const width = pixels[0].length;
  const rgb = new Uint8Array(width * height * 3);
  let ptr = 0;
  for (const row of pixels) {
    const ordered = flipX ? [...row].reverse() : row;
    for (const v of ordered) {
      const [r, g, b] = diverging(v, limit);
      rgb[ptr++] = r;
      rgb[ptr++] = g;
      rgb[ptr++] = b;
    }
  }
  return pngDataUri(width, height, rgb);
}

function colorbar(x: number, y: number, height: number, limit: number): string[] {
  const steps = 64;
  const parts: string[] = [];
  for (let i = 0; i < steps; i++) {
    const v = limit - (2 * limit * i) / (steps - 1);
    const [r, g, b] = diverging(v, limit);
    parts.push(
      `<rect x="${x}" y="${y + (height * i) / steps}" width="12" height="${height / steps + 0.5}" fill="rgb(${r},${g},${b})"/>`
    );
  }
  parts.push(`<rect x="${x}" y="${y}" width="12" height="${height}" fill="none" stroke="black" stroke-width="0.8"/>`);
  parts.push(text(x + 6, y - 6, 9, limit.toPrecision(3)));
  parts.push(text(x + 6, y + height + 12, 9, (-limit).toPrecision(3)));
  parts.push(text(x + 6, y + height / 2, 9, "0", "middle"));
  return parts;
}

/**
 * Heatmap grid of Wigner panels: rows are times, columns are conditionings,
 * one shared symmetric color scale centered at zero.  `flipX` mirrors the
 * real axis for visual parity with the left-shifted rendering convention.
 */
export function wignerPanelsFigure(panels: WignerPanel[], flipX = false): string {
  if (panels.length === 0) {
    throw new Error("no wigner grid inputs given");
  }
  const times = [...new Set(panels.map((p) => p.t))].sort((a, b) => a - b);
  const kinds = [...new Set(panels.map((p) => p.kind))].sort();
  const pixelsByPanel = new Map<WignerPanel, number[][]>();
  for (const p of panels) {
    pixelsByPanel.set(p, pixelGrid(p));
  }
  const limit = symmetricLimit([...pixelsByPanel.values()].map((rows) => rows.flat()));

  const cols = kinds.length;
  const rows = times.length;
  const width = MARGIN.left + cols * (PANEL.width + GAP.x) + 40;
  const height = MARGIN.top + rows * (PANEL.height + GAP.y) + MARGIN.bottom;
  const parts = openSvg(width, height);

  times.forEach((t, r) => {
    kinds.forEach((kind, c) => {
      const panel = panels.find((p) => p.t === t && p.kind === kind);
      const box: PanelBox = {
        x: MARGIN.left + c * (PANEL.width + GAP.x),
        y: MARGIN.top + r * (PANEL.height + GAP.y),
        width: PANEL.width,
        height: PANEL.height,
      };
      if (!panel) {
        parts.push(
          `<rect x="${box.x}" y="${box.y}" width="${box.width}" height="${box.height}" fill="#f2f2f2" stroke="black"/>`
        );
        parts.push(text(box.x + box.width / 2, box.y + box.height / 2, 10, "empty sector"));
        return;
      }
      const g = panel.grid;
      const xDomain: [number, number] = flipX ? [-g.re_max, -g.re_min] : [g.re_min, g.re_max];
      parts.push(imagePanel(box, rasterize(pixelsByPanel.get(panel)!, limit, flipX)));
      parts.push(
        ...axes(
          box,
          xDomain,
          [g.im_min, g.im_max],
          flipX ? "-Re beta" : "Re beta",
          "Im beta",
          `t = ${t}, ${panel.kind}`
        )
      );
    });
  });
  parts.push(...colorbar(width - 30, MARGIN.top, PANEL.height, limit));
  return closeSvg(parts);
}
