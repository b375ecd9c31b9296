/**
 * Readers for the simulator's file contracts: per-cycle trace CSV, run
 * summary JSON, combined sweep summaries, and convergence round traces.
 */
import { readFileSync } from "node:fs";
import { join } from "node:path";

export const TRACE_HEADER = [
  "cycle", "intersection", "N_W", "N_S", "N_DM", "N_succ",
  "A", "U", "collisions", "backoffs", "discards",
] as const;

export interface TraceRow {
  cycle: number;
  intersection: string;
  nW: number;
  nS: number;
  nDm: number;
  nSucc: number;
  a: number;
  u: number | null;
  collisions: number;
  backoffs: number;
  discards: number;
}

export interface RunSummary {
  runs: number;
  mean_abs_error: number;
  min_abs_error: number;
  q1_abs_error: number;
  median_abs_error: number;
  q3_abs_error: number;
  max_abs_error: number;
  mean_utilization: number | null;
  defined_u_cycles: number;
  zero_error_cycles: number;
  positive_error_cycles: number;
  negative_error_cycles: number;
  delivered: number;
  collisions: number;
  backoffs: number;
  discards: number;
}

export interface CombinedCell {
  replicates: number;
  seeds: number[];
  config: Record<string, unknown>;
  summary: RunSummary;
}

export interface RoundRow {
  trial: number;
  round: number;
  dmId: number;
  slot: number;
  collided: boolean;
}

function splitLines(text: string): string[] {
  return text.split(/\r?\n/).filter((line) => line.length > 0);
}

export function parseTrace(text: string): TraceRow[] {
  const lines = splitLines(text);
  if (lines.length === 0 || lines[0] !== TRACE_HEADER.join(",")) {
    throw new Error(`unexpected trace header: ${lines[0] ?? "<empty>"}`);
  }
  return lines.slice(1).map((line) => {
    const parts = line.split(",");
    if (parts.length !== TRACE_HEADER.length) {
      throw new Error(`malformed trace row: ${line}`);
    }
    return {
      cycle: Number(parts[0]),
      intersection: parts[1],
      nW: Number(parts[2]),
      nS: Number(parts[3]),
      nDm: Number(parts[4]),
      nSucc: Number(parts[5]),
      a: Number(parts[6]),
      u: parts[7] === "NA" ? null : Number(parts[7]),
      collisions: Number(parts[8]),
      backoffs: Number(parts[9]),
      discards: Number(parts[10]),
    };
  });
}

export function readTrace(path: string): TraceRow[] {
  return parseTrace(readFileSync(path, "utf8"));
}

export function aggregateRows(rows: TraceRow[]): TraceRow[] {
  return rows.filter((row) => row.intersection === "all");
}

export function readCombined(sweepDir: string): Record<string, CombinedCell> {
  const payload = JSON.parse(readFileSync(join(sweepDir, "combined.json"), "utf8"));
  if (typeof payload !== "object" || payload === null || !("cells" in payload)) {
    throw new Error("combined.json has no cells");
  }
  return (payload as { cells: Record<string, CombinedCell> }).cells;
}

export function requireCell(
  cells: Record<string, CombinedCell>, key: string,
): CombinedCell {
  const cell = cells[key];
  if (!cell) {
    throw new Error(`missing series: ${key}`);
  }
  return cell;
}

export function parseRounds(text: string): RoundRow[] {
  const lines = splitLines(text);
  if (lines[0] !== "trial,round,dm_id,slot,collided") {
    throw new Error(`unexpected rounds header: ${lines[0] ?? "<empty>"}`);
  }
  return lines.slice(1).map((line) => {
    const [trial, round, dmId, slot, collided] = line.split(",");
    return {
      trial: Number(trial),
      round: Number(round),
      dmId: Number(dmId),
      slot: Number(slot),
      collided: collided === "1",
    };
  });
}

export function readRounds(path: string): RoundRow[] {
  return parseRounds(readFileSync(path, "utf8"));
}

export function quantile(sorted: number[], q: number): number {
  if (sorted.length === 0) {
    throw new Error("quantile of empty data");
  }
  const pos = (sorted.length - 1) * q;
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  if (lo === hi) {
    return sorted[lo];
  }
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo);
}

export interface BoxStats {
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
}

export function boxStats(values: number[]): BoxStats {
  const sorted = [...values].sort((a, b) => a - b);
  return {
    min: sorted[0],
    q1: quantile(sorted, 0.25),
    median: quantile(sorted, 0.5),
    q3: quantile(sorted, 0.75),
    max: sorted[sorted.length - 1],
  };
}
