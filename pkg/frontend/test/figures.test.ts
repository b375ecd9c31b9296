import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import {
  PROTOCOLS,
  RADII,
  buildAbsErrorFigure,
  buildAccuracyFigure,
  buildCoordUtilizationFigure,
  buildRingFigure,
  buildUtilizationFigure,
  occupancyPattern,
} from "../src/figures.js";
import {
  rotatingRoundsCsv,
  summaryCell,
  writeCombined,
  writeFig5Sweep,
} from "./fixtures.js";

function tempDir(): string {
  return mkdtempSync(join(tmpdir(), "figures-"));
}

function fig5Cells(): Record<string, number[]> {
  const cells: Record<string, number[]> = {};
  for (const traffic of ["low", "medium", "high"]) {
    cells[`tdma-${traffic}`] = [0, 0, 0, 0];
    cells[`aloha-${traffic}`] = traffic === "high" ? [0, -2, -1, 0] : [0, 0, 1, 0];
    cells[`csma-${traffic}`] = [0, 1, 0, 2];
  }
  return cells;
}

describe("accuracy figure (fig5)", () => {
  it("extracts one series per protocol and traffic level", () => {
    const dir = writeFig5Sweep(tempDir(), fig5Cells());
    const { series, svg } = buildAccuracyFigure(dir);
    expect(series).toHaveLength(9);
    expect(svg).toContain("<svg");
    const tdma = series.filter((s) => s.protocol === "tdma");
    for (const s of tdma) {
      expect(s.errors.every((a) => a === 0)).toBe(true);
      expect(s.stats).toEqual({ min: 0, q1: 0, median: 0, q3: 0, max: 0 });
    }
    const alohaHigh = series.find((s) => s.protocol === "aloha" && s.traffic === "high")!;
    expect(Math.min(...alohaHigh.errors)).toBeLessThan(0);
    const csma = series.filter((s) => s.protocol === "csma");
    expect(csma.every((s) => s.stats.min >= 0)).toBe(true);
  });

  it("names the missing series", () => {
    const cells = fig5Cells();
    delete cells["csma-high"];
    const dir = writeFig5Sweep(tempDir(), cells);
    expect(() => buildAccuracyFigure(dir)).toThrow(/missing series: csma-high/);
  });
});

describe("utilization figure (fig6)", () => {
  function cells() {
    const all: Record<string, ReturnType<typeof summaryCell>> = {};
    for (const protocol of PROTOCOLS) {
      for (const radius of RADII) {
        all[`${protocol}-r${radius}`] = summaryCell({
          mean_utilization: protocol === "csma" ? 1.0 : 0.9 - radius / 100,
        });
      }
    }
    return all;
  }

  it("builds three series per radius", () => {
    const dir = writeCombined(tempDir(), cells());
    const { series, svg } = buildUtilizationFigure(dir);
    expect(series).toHaveLength(15);
    expect(svg).toContain("<rect");
  });

  it("errors on a missing protocol series", () => {
    const all = cells();
    delete all["aloha-r15"];
    const dir = writeCombined(tempDir(), all);
    expect(() => buildUtilizationFigure(dir)).toThrow(/missing series: aloha-r15/);
  });
});

describe("abs-error figure (fig10)", () => {
  it("places coordinated boxes below uncoordinated", () => {
    const dir = writeCombined(tempDir(), {
      "csma-uncoordinated": summaryCell({ max_abs_error: 3.9, median_abs_error: 0.3 }),
      "csma-coordinated": summaryCell({ max_abs_error: 1.1, median_abs_error: 0 }),
      "aloha-uncoordinated": summaryCell({ max_abs_error: 4, median_abs_error: 0.5 }),
      "aloha-coordinated": summaryCell({ max_abs_error: 2.6, median_abs_error: 0 }),
    });
    const { series, svg } = buildAbsErrorFigure(dir);
    expect(svg).toContain("<svg");
    for (const protocol of ["csma", "aloha"]) {
      const unc = series.find((s) => s.protocol === protocol && s.arm === "uncoordinated")!;
      const coord = series.find((s) => s.protocol === protocol && s.arm === "coordinated")!;
      expect(coord.stats.max).toBeLessThan(unc.stats.max);
    }
  });

  it("renders a degenerate box for an all-zero cell", () => {
    const dir = writeCombined(tempDir(), {
      "csma-uncoordinated": summaryCell(),
      "csma-coordinated": summaryCell(),
      "aloha-uncoordinated": summaryCell(),
      "aloha-coordinated": summaryCell(),
    });
    const { series } = buildAbsErrorFigure(dir);
    expect(series.every((s) => s.stats.max === 0)).toBe(true);
  });
});

describe("coordinated utilization figure (fig11)", () => {
  it("pairs the two arms per protocol and radius", () => {
    const all: Record<string, ReturnType<typeof summaryCell>> = {};
    for (const protocol of PROTOCOLS) {
      for (const radius of RADII) {
        all[`${protocol}-uncoordinated-r${radius}`] = summaryCell({ mean_utilization: 0.9 });
        all[`${protocol}-coordinated-r${radius}`] = summaryCell({
          mean_utilization: protocol === "tdma" ? 0.45 : 0.85,
        });
      }
    }
    const dir = writeCombined(tempDir(), all);
    const { series, svg } = buildCoordUtilizationFigure(dir);
    expect(series).toHaveLength(15);
    const tdma = series.filter((s) => s.protocol === "tdma");
    for (const s of tdma) {
      expect(s.coordinated / s.uncoordinated).toBeCloseTo(0.5);
    }
    expect(svg).toContain("fill-opacity=\"0.35\"");  // paired, not stacked
  });
});

describe("ring figure", () => {
  it("shows a changing occupancy pattern for the 6-slot rotation", () => {
    const dir = tempDir();
    const path = join(dir, "rounds.csv");
    writeFileSync(path, rotatingRoundsCsv(10));
    const { series, svg } = buildRingFigure(path, { maxRounds: 10 });
    expect(series).toHaveLength(10);
    expect(svg).toContain("<circle");
    const patterns = series.map((round) => occupancyPattern(round).join(","));
    const distinct = new Set(patterns);
    expect(distinct.size).toBeGreaterThan(1);  // the ring keeps moving
    expect(patterns[0]).not.toEqual(patterns[1]);
  });

  it("keeps a static pattern static", () => {
    const dir = tempDir();
    const lines = ["trial,round,dm_id,slot,collided"];
    for (let round = 1; round <= 5; round += 1) {
      for (let dm = 0; dm < 4; dm += 1) {
        lines.push(`0,${round},${dm},${dm * 2},0`);
      }
    }
    const path = join(dir, "rounds.csv");
    writeFileSync(path, lines.join("\n") + "\n");
    const { series } = buildRingFigure(path, { maxRounds: 5, roundTime: 8 });
    const patterns = new Set(series.map((round) => occupancyPattern(round).join(",")));
    expect(patterns.size).toBe(1);
  });

  it("errors on an unknown trial", () => {
    const dir = tempDir();
    const path = join(dir, "rounds.csv");
    writeFileSync(path, rotatingRoundsCsv(3));
    expect(() => buildRingFigure(path, { trial: 7 })).toThrow(/no rows for trial 7/);
  });
});
