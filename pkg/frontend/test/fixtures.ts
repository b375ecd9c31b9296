/** Small in-memory fixtures conforming to the simulator's file contracts. */
import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { TRACE_HEADER } from "../src/data.js";

export function traceText(rows: Array<Record<string, number | string>>): string {
  const lines = [TRACE_HEADER.join(",")];
  for (const row of rows) {
    lines.push([
      row.cycle, row.intersection, row.N_W, row.N_S, row.N_DM, row.N_succ,
      row.A, row.U, row.collisions, row.backoffs, row.discards,
    ].join(","));
  }
  return lines.join("\n") + "\n";
}

export function simpleTrace(errors: number[]): string {
  return traceText(errors.flatMap((a, cycle) => {
    const nS = 5;
    const nDm = nS + a;
    const row = {
      cycle, N_W: nS, N_S: nS, N_DM: nDm, N_succ: nDm, A: a,
      U: nS === 0 ? "NA" : (nDm / nS).toString(),
      collisions: 0, backoffs: 0, discards: 0,
    };
    return [
      { intersection: "0", ...row },
      { intersection: "all", ...row },
    ];
  }));
}

export function summaryCell(overrides: Partial<Record<string, unknown>> = {}) {
  return {
    replicates: 1,
    seeds: [1000],
    config: { lower_mac: "tdma" },
    summary: {
      runs: 1,
      mean_abs_error: 0,
      min_abs_error: 0,
      q1_abs_error: 0,
      median_abs_error: 0,
      q3_abs_error: 0,
      max_abs_error: 0,
      mean_utilization: 0.9,
      defined_u_cycles: 100,
      zero_error_cycles: 100,
      positive_error_cycles: 0,
      negative_error_cycles: 0,
      delivered: 500,
      collisions: 0,
      backoffs: 0,
      discards: 0,
      ...overrides,
    },
  };
}

export function writeFig5Sweep(root: string, errorsByCell: Record<string, number[]>): string {
  for (const [key, errors] of Object.entries(errorsByCell)) {
    const dir = join(root, key, "rep00");
    mkdirSync(dir, { recursive: true });
    writeFileSync(join(dir, "trace.csv"), simpleTrace(errors));
  }
  return root;
}

export function writeCombined(
  root: string, cells: Record<string, ReturnType<typeof summaryCell>>,
): string {
  mkdirSync(root, { recursive: true });
  writeFileSync(join(root, "combined.json"), JSON.stringify({ preset: "test", cells }));
  return root;
}

/** A 4-DM rotation on a 6-slot ring: occupancy changes every round. */
export function rotatingRoundsCsv(rounds: number): string {
  const lines = ["trial,round,dm_id,slot,collided"];
  let slots = [0, 1, 3, 5];
  for (let round = 1; round <= rounds; round += 1) {
    slots.forEach((slot, dm) => lines.push(`0,${round},${dm},${slot},0`));
    slots = slots.map((slot) => (slot + 1) % 6);
  }
  return lines.join("\n") + "\n";
}
