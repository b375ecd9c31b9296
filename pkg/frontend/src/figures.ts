/**
 * Figure builders: each consumes a completed sweep directory and returns the
 * extracted series plus a rendered SVG, so the numbers stay testable apart
 * from the drawing.
 */
import { join } from "node:path";

import {
  BoxStats,
  RoundRow,
  aggregateRows,
  boxStats,
  readCombined,
  readRounds,
  readTrace,
  requireCell,
} from "./data.js";
import {
  BarGroup,
  BoxSeries,
  PROTOCOL_COLORS,
  PROTOCOL_LABELS,
  SvgCanvas,
  barChart,
  boxChart,
} from "./svg.js";

export const PROTOCOLS = ["tdma", "aloha", "csma"] as const;
export const TRAFFIC_LEVELS = ["low", "medium", "high"] as const;
export const RADII = [5, 10, 15, 20, 25] as const;

export interface AccuracySeries {
  protocol: string;
  traffic: string;
  errors: number[];
  stats: BoxStats;
}

export interface Figure<S> {
  series: S;
  svg: string;
}

/** fig5: per-cycle information error distributions, one box per protocol and
 * traffic level, from the per-cycle traces. */
export function buildAccuracyFigure(sweepDir: string): Figure<AccuracySeries[]> {
  const series: AccuracySeries[] = [];
  for (const traffic of TRAFFIC_LEVELS) {
    for (const protocol of PROTOCOLS) {
      const path = join(sweepDir, `${protocol}-${traffic}`, "rep00", "trace.csv");
      let rows;
      try {
        rows = readTrace(path);
      } catch (error) {
        throw new Error(`missing series: ${protocol}-${traffic} (${String(error)})`);
      }
      const errors = aggregateRows(rows).map((row) => row.a);
      series.push({ protocol, traffic, errors, stats: boxStats(errors) });
    }
  }
  const boxes: BoxSeries[] = series.map((s) => ({
    label: `${PROTOCOL_LABELS[s.protocol]}\n${s.traffic}`,
    color: PROTOCOL_COLORS[s.protocol],
    ...s.stats,
  }));
  return { series, svg: boxChart(boxes, { width: 880, yLabel: "information error A" }) };
}

export interface UtilizationSeries {
  protocol: string;
  radius: number;
  meanUtilization: number;
}

/** fig6: mean spectrum utilisation per protocol over neighbor radii. */
export function buildUtilizationFigure(sweepDir: string): Figure<UtilizationSeries[]> {
  const cells = readCombined(sweepDir);
  const series: UtilizationSeries[] = [];
  for (const protocol of PROTOCOLS) {
    for (const radius of RADII) {
      const cell = requireCell(cells, `${protocol}-r${radius}`);
      series.push({
        protocol,
        radius,
        meanUtilization: cell.summary.mean_utilization ?? 0,
      });
    }
  }
  const groups: BarGroup[] = RADII.map((radius) => ({
    label: `r=${radius}`,
    bars: PROTOCOLS.map((protocol) => ({
      label: protocol,
      value: series.find((s) => s.protocol === protocol && s.radius === radius)!
        .meanUtilization,
      color: PROTOCOL_COLORS[protocol],
    })),
  }));
  return { series, svg: barChart(groups, { yLabel: "mean spectrum utilisation" }) };
}

export interface AbsErrorSeries {
  protocol: string;
  arm: "uncoordinated" | "coordinated";
  stats: BoxStats;
}

/** fig10: averaged |error| box statistics, coordinated vs uncoordinated. */
export function buildAbsErrorFigure(sweepDir: string): Figure<AbsErrorSeries[]> {
  const cells = readCombined(sweepDir);
  const series: AbsErrorSeries[] = [];
  for (const protocol of ["csma", "aloha"]) {
    for (const arm of ["uncoordinated", "coordinated"] as const) {
      const summary = requireCell(cells, `${protocol}-${arm}`).summary;
      series.push({
        protocol,
        arm,
        stats: {
          min: summary.min_abs_error,
          q1: summary.q1_abs_error,
          median: summary.median_abs_error,
          q3: summary.q3_abs_error,
          max: summary.max_abs_error,
        },
      });
    }
  }
  const boxes: BoxSeries[] = series.map((s) => ({
    label: `${PROTOCOL_LABELS[s.protocol]}\n${s.arm}`,
    color: PROTOCOL_COLORS[s.protocol],
    ...s.stats,
  }));
  return { series, svg: boxChart(boxes, { yLabel: "|information error|" }) };
}

export interface CoordUtilizationSeries {
  protocol: string;
  radius: number;
  uncoordinated: number;
  coordinated: number;
}

/** fig11: coordinated vs uncoordinated utilisation, side-by-side per radius
 * (overlaid pairs, not stacked). */
export function buildCoordUtilizationFigure(
  sweepDir: string,
): Figure<CoordUtilizationSeries[]> {
  const cells = readCombined(sweepDir);
  const series: CoordUtilizationSeries[] = [];
  for (const protocol of PROTOCOLS) {
    for (const radius of RADII) {
      const unc = requireCell(cells, `${protocol}-uncoordinated-r${radius}`);
      const coord = requireCell(cells, `${protocol}-coordinated-r${radius}`);
      series.push({
        protocol,
        radius,
        uncoordinated: unc.summary.mean_utilization ?? 0,
        coordinated: coord.summary.mean_utilization ?? 0,
      });
    }
  }
  const groups: BarGroup[] = RADII.map((radius) => ({
    label: `r=${radius}`,
    bars: PROTOCOLS.flatMap((protocol) => {
      const entry = series.find((s) => s.protocol === protocol && s.radius === radius)!;
      return [
        {
          label: `${protocol} uncoordinated`,
          value: entry.uncoordinated,
          color: PROTOCOL_COLORS[protocol],
          opacity: 0.35,
        },
        {
          label: `${protocol} coordinated`,
          value: entry.coordinated,
          color: PROTOCOL_COLORS[protocol],
        },
      ];
    }),
  }));
  return {
    series,
    svg: barChart(groups, { width: 880, yLabel: "mean spectrum utilisation" }),
  };
}

export interface RingRound {
  round: number;
  occupancy: Map<number, { dmId: number; collided: boolean }[]>;
}

export function ringRounds(rows: RoundRow[], trial: number, maxRounds: number): RingRound[] {
  const byRound = new Map<number, RoundRow[]>();
  for (const row of rows) {
    if (row.trial !== trial) {
      continue;
    }
    const bucket = byRound.get(row.round) ?? [];
    bucket.push(row);
    byRound.set(row.round, bucket);
  }
  if (byRound.size === 0) {
    throw new Error(`no rows for trial ${trial}`);
  }
  const rounds = [...byRound.keys()].sort((a, b) => a - b).slice(0, maxRounds);
  return rounds.map((round) => {
    const occupancy = new Map<number, { dmId: number; collided: boolean }[]>();
    for (const row of byRound.get(round)!) {
      const entries = occupancy.get(row.slot) ?? [];
      entries.push({ dmId: row.dmId, collided: row.collided });
      occupancy.set(row.slot, entries);
    }
    return { round, occupancy };
  });
}

/** Slot occupancy per round as a sorted tuple, for change detection. */
export function occupancyPattern(round: RingRound): number[] {
  return [...round.occupancy.keys()].sort((a, b) => a - b);
}

/** rings: one small ring diagram per round from a convergence trace. */
export function buildRingFigure(
  roundsCsv: string, opts: { trial?: number; maxRounds?: number; roundTime?: number } = {},
): Figure<RingRound[]> {
  const rows = readRounds(roundsCsv);
  const rounds = ringRounds(rows, opts.trial ?? 0, opts.maxRounds ?? 12);
  const roundTime = opts.roundTime
    ?? rows.reduce((top, row) => Math.max(top, row.slot), 0) + 1;

  const cell = 130;
  const cols = Math.min(6, rounds.length);
  const rowsN = Math.ceil(rounds.length / cols);
  const canvas = new SvgCanvas(cols * cell, rowsN * cell + 8);
  rounds.forEach((round, index) => {
    const cx = (index % cols) * cell + cell / 2;
    const cy = Math.floor(index / cols) * cell + cell / 2 + 6;
    const radius = cell * 0.32;
    for (let slot = 0; slot < roundTime; slot += 1) {
      const angle = (2 * Math.PI * slot) / roundTime - Math.PI / 2;
      canvas.circle(cx + radius * Math.cos(angle), cy + radius * Math.sin(angle),
        9, "white", "#999");
    }
    for (const [slot, occupants] of round.occupancy) {
      const angle = (2 * Math.PI * slot) / roundTime - Math.PI / 2;
      const x = cx + radius * Math.cos(angle);
      const y = cy + radius * Math.sin(angle);
      for (const occupant of occupants) {
        canvas.circle(x, y, 8, occupant.collided ? "#d62728" : `hsl(${occupant.dmId * 85}, 60%, 45%)`);
        canvas.text(x, y + 3.5, String(occupant.dmId), 8, "middle", "white");
      }
    }
    canvas.text(cx, cy - cell / 2 + 6, `round ${round.round}`, 10);
  });
  return { series: rounds, svg: canvas.render() };
}
