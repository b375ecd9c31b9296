"""Per-cycle measurements, run summaries, and the CSV/JSON trace contracts.

Per cycle and intersection the record carries two waiting counts:

* ``N_W`` — vehicles on watched cells that are held in place right now
  (red light ahead or blocked by traffic): the instantaneous count a
  human would make at the snapshot moment;
* ``N_S`` — sensors holding a fresh detection this cycle.  A detection
  needs the same vehicle in the watched cell on two consecutive cycles, so
  ``N_S`` equals the waiting count as the sensors can know it (one cycle
  of lag for newly stopped vehicles).

With perfect sensing the sensed count is the waiting count, measured one
detection-lag apart; both the information error ``A`` and the utilisation
ratio ``U`` are therefore computed against ``N_S``, while the
instantaneous ``N_W`` column is reported alongside for comparison.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

TRACE_COLUMNS = (
    "cycle", "intersection", "N_W", "N_S", "N_DM", "N_succ",
    "A", "U", "collisions", "backoffs", "discards",
)
TRACE_VERSION = 1
AGGREGATE_KEY = "all"


def accuracy(n_dm: int, n_s: int) -> int:
    """Signed information error: reported minus sensed waiting vehicles.

    Positive means the controller believes more vehicles wait than do
    (stale reports); negative means it missed some (collisions, discards).
    """
    return n_dm - n_s


def utilization(n_succ: int, n_w: int) -> float | None:
    """Share of the waiting-vehicle information that actually arrived.

    Undefined (``None``) when nothing waits; such cycles are excluded from
    averages.
    """
    if n_w == 0:
        return None
    return n_succ / n_w


@dataclass(slots=True)
class IntersectionRow:
    n_w: int
    n_s: int
    n_dm: int
    n_succ: int
    a: int
    u: float | None
    collisions: int
    backoffs: int
    discards: int


@dataclass(slots=True)
class CycleRecord:
    """One cycle's measurements: one row per intersection plus an aggregate."""

    cycle: int
    rows: dict[str, IntersectionRow] = field(default_factory=dict)

    @property
    def aggregate(self) -> IntersectionRow:
        return self.rows[AGGREGATE_KEY]


def _make_row(n_w, n_s, n_dm, n_succ, collisions, backoffs, discards) -> IntersectionRow:
    return IntersectionRow(
        n_w=n_w, n_s=n_s, n_dm=n_dm, n_succ=n_succ,
        a=accuracy(n_dm, n_s), u=utilization(n_succ, n_s),
        collisions=collisions, backoffs=backoffs, discards=discards,
    )


def snapshot(model) -> CycleRecord:
    """Collect the cycle's counts; runs in the final tick before decisions."""
    n = model.config.intersections
    n_w = [0] * n
    n_s = [0] * n
    occupancy = model.occupancy
    for sensor in model.sensors:
        vid = occupancy.get(sensor.cell)
        if vid is not None and model.vehicle_blocked_now(model.vehicles[vid]):
            n_w[sensor.owner] += 1
        if sensor.last_detect_cycle == model.cycle:
            n_s[sensor.owner] += 1

    stats = model.cycle_stats
    record = CycleRecord(model.cycle)
    for i in range(n):
        record.rows[str(i)] = _make_row(
            n_w[i], n_s[i], stats["delivered"][i], stats["delivered"][i],
            stats["collisions"][i], stats["backoffs"][i], stats["discards"][i],
        )
    record.rows[AGGREGATE_KEY] = _make_row(
        sum(n_w), sum(n_s), sum(stats["delivered"]), sum(stats["delivered"]),
        sum(stats["collisions"]), sum(stats["backoffs"]), sum(stats["discards"]),
    )
    return record


def _format_u(u: float | None) -> str:
    return "NA" if u is None else repr(u)


def write_trace(path, records: list[CycleRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(TRACE_COLUMNS)
        for record in records:
            keys = sorted((k for k in record.rows if k != AGGREGATE_KEY), key=int)
            for key in keys + [AGGREGATE_KEY]:
                row = record.rows[key]
                writer.writerow([
                    record.cycle, key, row.n_w, row.n_s, row.n_dm, row.n_succ,
                    row.a, _format_u(row.u), row.collisions, row.backoffs, row.discards,
                ])


def read_trace(path) -> list[CycleRecord]:
    records: dict[int, CycleRecord] = {}
    with open(path, "r", newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if tuple(header) != TRACE_COLUMNS:
            raise ValueError(f"unexpected trace header: {header}")
        for raw in reader:
            cycle = int(raw[0])
            record = records.setdefault(cycle, CycleRecord(cycle))
            record.rows[raw[1]] = IntersectionRow(
                n_w=int(raw[2]), n_s=int(raw[3]), n_dm=int(raw[4]), n_succ=int(raw[5]),
                a=int(raw[6]), u=None if raw[7] == "NA" else float(raw[7]),
                collisions=int(raw[8]), backoffs=int(raw[9]), discards=int(raw[10]),
            )
    return [records[c] for c in sorted(records)]


@dataclass
class RunSummary:
    """Box statistics of |A| plus mean utilisation, over one or more runs.

    For several runs each box statistic is the mean of the per-run
    statistics (the "average maximum", "average median", ...); counters are
    summed.
    """

    runs: int
    mean_abs_error: float
    min_abs_error: float
    q1_abs_error: float
    median_abs_error: float
    q3_abs_error: float
    max_abs_error: float
    mean_utilization: float | None
    defined_u_cycles: int
    zero_error_cycles: int
    positive_error_cycles: int
    negative_error_cycles: int
    delivered: int
    collisions: int
    backoffs: int
    discards: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_dict(cls, data: dict) -> "RunSummary":
        return cls(**data)


def summarize_run(records: list[CycleRecord]) -> RunSummary:
    """Statistics of one run, taken over the per-cycle aggregate rows."""
    if not records:
        raise ValueError("no records to summarize")
    rows = [r.aggregate for r in records]
    abs_a = np.array([abs(row.a) for row in rows], dtype=float)
    q1, median, q3 = np.percentile(abs_a, [25.0, 50.0, 75.0])
    defined_u = [row.u for row in rows if row.u is not None]
    return RunSummary(
        runs=1,
        mean_abs_error=float(abs_a.mean()),
        min_abs_error=float(abs_a.min()),
        q1_abs_error=float(q1),
        median_abs_error=float(median),
        q3_abs_error=float(q3),
        max_abs_error=float(abs_a.max()),
        mean_utilization=float(np.mean(defined_u)) if defined_u else None,
        defined_u_cycles=len(defined_u),
        zero_error_cycles=sum(1 for row in rows if row.a == 0),
        positive_error_cycles=sum(1 for row in rows if row.a > 0),
        negative_error_cycles=sum(1 for row in rows if row.a < 0),
        delivered=sum(row.n_succ for row in rows),
        collisions=sum(row.collisions for row in rows),
        backoffs=sum(row.backoffs for row in rows),
        discards=sum(row.discards for row in rows),
    )


def aggregate_summaries(summaries: list[RunSummary]) -> RunSummary:
    """Average the box statistics of several runs; sum the counters."""
    if not summaries:
        raise ValueError("no summaries to aggregate")

    def avg(name):
        return float(np.mean([getattr(s, name) for s in summaries]))

    u_values = [s.mean_utilization for s in summaries if s.mean_utilization is not None]
    return RunSummary(
        runs=sum(s.runs for s in summaries),
        mean_abs_error=avg("mean_abs_error"),
        min_abs_error=avg("min_abs_error"),
        q1_abs_error=avg("q1_abs_error"),
        median_abs_error=avg("median_abs_error"),
        q3_abs_error=avg("q3_abs_error"),
        max_abs_error=avg("max_abs_error"),
        mean_utilization=float(np.mean(u_values)) if u_values else None,
        defined_u_cycles=sum(s.defined_u_cycles for s in summaries),
        zero_error_cycles=sum(s.zero_error_cycles for s in summaries),
        positive_error_cycles=sum(s.positive_error_cycles for s in summaries),
        negative_error_cycles=sum(s.negative_error_cycles for s in summaries),
        delivered=sum(s.delivered for s in summaries),
        collisions=sum(s.collisions for s in summaries),
        backoffs=sum(s.backoffs for s in summaries),
        discards=sum(s.discards for s in summaries),
    )


def summarize(runs: list[list[CycleRecord]]) -> RunSummary:
    """Per-run box statistics averaged across runs."""
    return aggregate_summaries([summarize_run(records) for records in runs])


def write_summary(path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def read_summary(path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)
