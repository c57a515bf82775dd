import { existsSync, mkdirSync, readFileSync, readdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { readCsv } from "./csv.js";
import { LevelRun, mandelQFigure, meanPhotonFigure, populationsFigure } from "./timeseries.js";
import { WignerPanel, wignerPanelsFigure } from "./wignerPanels.js";

const LEVEL_LABELS: Record<number, string> = {
  3: "start: upper level",
  2: "start: intermediate level",
  1: "start: lower level",
};

function loadRuns(resultsDir: string): LevelRun[] {
  const manifestPath = join(resultsDir, "sweep_manifest.json");
  if (!existsSync(manifestPath)) {
    throw new Error(`${manifestPath}: not found; run the sweep first`);
  }
  const manifest: Array<{ level: number; dir: string }> = JSON.parse(
    readFileSync(manifestPath, "utf-8")
  );
  const runs: LevelRun[] = [];
  for (const entry of [...manifest].sort((a, b) => b.level - a.level)) {
    const dir = join(resultsDir, entry.dir);
    const run: LevelRun = {
      level: entry.level,
      label: LEVEL_LABELS[entry.level] ?? `level ${entry.level}`,
    };
    const popPath = join(dir, "populations.csv");
    if (existsSync(popPath)) {
      run.populations = { table: readCsv(popPath), path: popPath };
    }
    const statsPath = join(dir, "photon_stats.csv");
    if (existsSync(statsPath)) {
      run.stats = { table: readCsv(statsPath), path: statsPath };
    }
    // dashed overlays appear when an independently computed trace sits alongside
    for (const [key, name] of [
      ["populationsOverlay", "populations_oracle.csv"],
      ["statsOverlay", "photon_stats_oracle.csv"],
    ] as const) {
      const overlayPath = join(dir, name);
      if (existsSync(overlayPath)) {
        run[key] = { table: readCsv(overlayPath), path: overlayPath };
      }
    }
    runs.push(run);
  }
  return runs;
}

function loadWignerPanels(wignerDir: string): WignerPanel[] {
  if (!existsSync(wignerDir)) {
    return [];
  }
  const panels: WignerPanel[] = [];
  for (const name of readdirSync(wignerDir).sort()) {
    if (!name.startsWith("wigner_") || !name.endsWith(".json")) continue;
    const sidecar = JSON.parse(readFileSync(join(wignerDir, name), "utf-8"));
    if (sidecar.kind === "reduced") continue; // panel grid shows the conditioned sectors
    const csvPath = join(wignerDir, name.replace(/\.json$/, ".csv"));
    if (!existsSync(csvPath)) continue;
    panels.push({
      t: sidecar.t,
      kind: sidecar.kind,
      grid: sidecar.grid,
      table: readCsv(csvPath),
      path: csvPath,
    });
  }
  return panels;
}

export function generateFigures(resultsDir: string, outDir: string, flipX = false): string[] {
  mkdirSync(outDir, { recursive: true });
  const runs = loadRuns(resultsDir);
  const written: string[] = [];
  const figures: Array<[string, () => string]> = [
    ["populations.svg", () => populationsFigure(runs)],
    ["mean_photon.svg", () => meanPhotonFigure(runs)],
    ["mandel_q.svg", () => mandelQFigure(runs)],
    [
      "wigner_panels.svg",
      () => wignerPanelsFigure(loadWignerPanels(join(resultsDir, "wigner")), flipX),
    ],
  ];
  for (const [name, build] of figures) {
    const path = join(outDir, name);
    writeFileSync(path, build());
    written.push(path);
  }
  return written;
}

function main(): void {
  const args = process.argv.slice(2).filter((a) => a !== "--flip-x");
  const flipX = process.argv.includes("--flip-x");
  if (args.length !== 2) {
    console.error("usage: node dist/main.js <results-dir> <figures-dir> [--flip-x]");
    process.exit(2);
  }
  try {
    const written = generateFigures(args[0], args[1], flipX);
    for (const path of written) {
      console.log(`wrote ${path}`);
    }
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    process.exit(1);
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  main();
}
