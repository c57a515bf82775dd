import { Table, column } from "./csv.js";
import { PanelBox, Series, axes, closeSvg, horizontalLine, openSvg, polyline, text } from "./svg.js";

export interface LevelRun {
  level: number;
  label: string;
  populations?: { table: Table; path: string };
  stats?: { table: Table; path: string };
  /** optional dashed overlay (e.g. an independently computed trace) */
  populationsOverlay?: { table: Table; path: string };
  statsOverlay?: { table: Table; path: string };
}

const MARGIN = { left: 62, right: 16, top: 30, bottom: 46 };
const COLORS = ["#1a1a1a", "#2c7fb8", "#d95f02"];
const OVERLAY_COLOR = "#2ca02c";

function panelGrid(
  rows: number,
  cols: number,
  panelWidth: number,
  panelHeight: number
): { width: number; height: number; box: (r: number, c: number) => PanelBox } {
  const width = MARGIN.left + cols * (panelWidth + MARGIN.right + 46);
  const height = MARGIN.top + rows * (panelHeight + MARGIN.bottom + 18);
  return {
    width,
    height,
    box: (r, c) => ({
      x: MARGIN.left + c * (panelWidth + MARGIN.right + 46),
      y: MARGIN.top + r * (panelHeight + MARGIN.bottom + 18),
      width: panelWidth,
      height: panelHeight,
    }),
  };
}

function extent(values: number[], pad = 0.05): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const span = hi - lo;
  return [lo - pad * span, hi + pad * span];
}

/** 3x3 occupation-probability grid: rows are initial levels, columns are P3/P2/P1. */
export function populationsFigure(runs: LevelRun[]): string {
  const withData = runs.filter((r) => r.populations);
  if (withData.length === 0) {
    throw new Error("no populations.csv inputs given");
  }
  const grid = panelGrid(withData.length, 3, 230, 130);
  const parts = openSvg(grid.width, grid.height);
  const colNames: Array<[string, string]> = [
    ["P3", "upper occupation"],
    ["P2", "intermediate occupation"],
    ["P1", "lower occupation"],
  ];
  withData.forEach((run, r) => {
    const { table, path } = run.populations!;
    const t = column(table, "t", path);
    colNames.forEach(([col, title], c) => {
      const box = grid.box(r, c);
      const ys = column(table, col, path);
      const xDomain: [number, number] = [Math.min(...t), Math.max(...t)];
      parts.push(...axes(box, xDomain, [0, 1], "t", col, r === 0 ? title : undefined));
      parts.push(polyline(box, xDomain, [0, 1], { xs: t, ys, color: COLORS[c % COLORS.length] }));
      if (run.populationsOverlay) {
        const over = run.populationsOverlay;
        parts.push(
          polyline(box, xDomain, [0, 1], {
            xs: column(over.table, "t", over.path),
            ys: column(over.table, col, over.path),
            color: OVERLAY_COLOR,
            dashed: true,
          })
        );
      }
      if (c === 0) {
        parts.push(text(box.x + 4, box.y + 12, 10, run.label, "start"));
      }
    });
  });
  return closeSvg(parts);
}

function statsPanels(
  runs: LevelRun[],
  columnName: string,
  yLabel: string,
  decorate: (box: PanelBox, yDomain: [number, number]) => string[]
): string {
  const withData = runs.filter((r) => r.stats);
  if (withData.length === 0) {
    throw new Error("no photon_stats.csv inputs given");
  }
  const grid = panelGrid(withData.length, 1, 480, 130);
  const parts = openSvg(grid.width, grid.height);
  withData.forEach((run, r) => {
    const { table, path } = run.stats!;
    const t = column(table, "t", path);
    const ys = column(table, columnName, path);
    const box = grid.box(r, 0);
    const xDomain: [number, number] = [Math.min(...t), Math.max(...t)];
    const yDomain = extent(ys);
    parts.push(...axes(box, xDomain, yDomain, "t", yLabel, run.label));
    parts.push(...decorate(box, yDomain));
    parts.push(polyline(box, xDomain, yDomain, { xs: t, ys, color: COLORS[0] }));
    if (run.statsOverlay) {
      const over = run.statsOverlay;
      parts.push(
        polyline(box, xDomain, yDomain, {
          xs: column(over.table, "t", over.path),
          ys: column(over.table, columnName, over.path),
          color: OVERLAY_COLOR,
          dashed: true,
        })
      );
    }
  });
  return closeSvg(parts);
}

/** Mean photon number traces with anchor lines at 15, 16 and 17. */
export function meanPhotonFigure(runs: LevelRun[]): string {
  return statsPanels(runs, "mean_n", "mean photon number", (box, yDomain) => {
    const lines: string[] = [];
    for (const anchor of [15, 16, 17]) {
      if (anchor > yDomain[0] && anchor < yDomain[1]) {
        lines.push(horizontalLine(box, yDomain, anchor, "#888888"));
      }
    }
    return lines;
  });
}

/** Mandel Q traces with the Poissonian zero line marked. */
export function mandelQFigure(runs: LevelRun[]): string {
  return statsPanels(runs, "mandel_q", "Mandel Q", (box, yDomain) => {
    if (0 > yDomain[0] && 0 < yDomain[1]) {
      return [horizontalLine(box, yDomain, 0, "#b22222")];
    }
    return [];
  });
}
