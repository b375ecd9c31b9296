"""Single-run execution and preset sweeps with idempotent, parallel cells."""
from __future__ import annotations

import csv
import multiprocessing
import os
import sys
from pathlib import Path

from .config import SimConfig
from .metrics import (
    RunSummary,
    aggregate_summaries,
    read_summary,
    summarize_run,
    write_summary,
    write_trace,
)
from .model import build_model, step_cycle
from .mac_upper import clustered_slots, run_until_converged, spread_slots
from .presets import PRESETS, ConvergenceCell, SimulationCell
from .rng import derive_seed
import random

TRACE_NAME = "trace.csv"
SUMMARY_NAME = "summary.json"
ROUNDS_NAME = "rounds.csv"
COMBINED_NAME = "combined.json"
PROGRESS_EVERY = 1000


def run_simulation(config: SimConfig, out_dir, progress: bool = True) -> dict:
    """Execute one run; writes trace.csv and summary.json into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    model = build_model(config)
    records = []
    total = config.total_cycles
    for i in range(total):
        records.append(step_cycle(model))
        if progress and (i + 1) % PROGRESS_EVERY == 0:
            print(f"cycle {i + 1}/{total}", file=sys.stderr)
    write_trace(out / TRACE_NAME, records)
    payload = {
        "trace_version": 1,
        "config": config.to_dict(),
        "seed": config.seed,
        "cycles": total,
        "summary": summarize_run(records).to_dict(),
    }
    write_summary(out / SUMMARY_NAME, payload)
    return payload


def _cell_dir(base: Path, cell: SimulationCell) -> Path:
    return base / cell.key / f"rep{cell.replicate:02d}"


def _cell_done(directory: Path) -> bool:
    return (directory / TRACE_NAME).exists() and (directory / SUMMARY_NAME).exists()


def _run_cell_task(args) -> str:
    config_dict, out_dir = args
    config = SimConfig.from_dict(config_dict)
    run_simulation(config, out_dir, progress=False)
    return out_dir


def _initial_slots(cell: ConvergenceCell, rng: random.Random):
    if cell.initial == "spread":
        return spread_slots(cell.dm_count, cell.round_time)
    if cell.initial == "cluster":
        return clustered_slots(cell.dm_count, cell.round_time, rng.randrange(cell.round_time))
    return None  # uniform random starting slots


def run_convergence_cell(cell: ConvergenceCell, out_dir, root_seed: int) -> dict:
    """Run all trials of one convergence cell; writes rounds.csv + summary.json."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    rounds_by_trial = []
    for trial in range(cell.trials):
        rng = random.Random(derive_seed(root_seed, f"{cell.key}:{trial}"))
        history: list[tuple[int, int, int, bool]] = []
        _schedule, rounds = run_until_converged(
            cell.protocol, cell.dm_count, cell.round_time, rng,
            max_rounds=cell.max_rounds, initial_slots=_initial_slots(cell, rng),
            history=history,
        )
        rounds_by_trial.append(rounds)
        for rnd, dm, slot, collided in history:
            rows.append((trial, rnd, dm, slot, int(collided)))
    with open(out / ROUNDS_NAME, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("trial", "round", "dm_id", "slot", "collided"))
        writer.writerows(rows)
    converged = [r for r in rounds_by_trial if r is not None]
    payload = {
        "protocol": cell.protocol,
        "dm_count": cell.dm_count,
        "round_time": cell.round_time,
        "boundary_round_time": cell.round_time == cell.dm_count,
        "trials": cell.trials,
        "max_rounds": cell.max_rounds,
        "converged_trials": len(converged),
        "fraction_converged": len(converged) / cell.trials,
        "mean_rounds": (sum(converged) / len(converged)) if converged else None,
        "max_rounds_observed": max(converged) if converged else None,
        "rounds_by_trial": rounds_by_trial,
    }
    write_summary(out / SUMMARY_NAME, payload)
    return payload


def run_sweep(preset_name: str, out_dir, root_seed: int | None = None,
              jobs: int = 1, progress: bool = True) -> Path:
    """Run every cell of a preset, skipping cells whose outputs already exist.

    Returns the path of the combined summary table.
    """
    preset = PRESETS.get(preset_name)
    if preset is None:
        raise KeyError(preset_name)
    base = Path(out_dir) / preset.name
    base.mkdir(parents=True, exist_ok=True)
    cells = preset.cells(root_seed)
    root = preset.default_root_seed if root_seed is None else root_seed

    if preset.kind == "convergence":
        for cell in cells:
            cell_dir = base / cell.key
            if (cell_dir / SUMMARY_NAME).exists():
                continue
            if progress:
                print(f"convergence cell {cell.key}", file=sys.stderr)
            run_convergence_cell(cell, cell_dir, root)
        combined = {cell.key: read_summary(base / cell.key / SUMMARY_NAME) for cell in cells}
        combined_path = base / COMBINED_NAME
        write_summary(combined_path, {"preset": preset.name, "cells": combined})
        return combined_path

    pending = []
    for cell in cells:
        directory = _cell_dir(base, cell)
        if _cell_done(directory):
            continue
        pending.append((cell.config.to_dict(), str(directory)))
    if pending:
        if progress:
            print(f"{preset.name}: running {len(pending)} of {len(cells)} cells "
                  f"(jobs={jobs})", file=sys.stderr)
        if jobs > 1:
            with multiprocessing.Pool(jobs) as pool:
                for done in pool.imap_unordered(_run_cell_task, pending):
                    if progress:
                        print(f"done {done}", file=sys.stderr)
        else:
            for task in pending:
                _run_cell_task(task)
                if progress:
                    print(f"done {task[1]}", file=sys.stderr)

    by_key: dict[str, list[dict]] = {}
    for cell in cells:
        payload = read_summary(_cell_dir(base, cell) / SUMMARY_NAME)
        by_key.setdefault(cell.key, []).append(payload)
    combined_cells = {}
    for key, payloads in by_key.items():
        summaries = [RunSummary.from_dict(p["summary"]) for p in payloads]
        combined_cells[key] = {
            "replicates": len(payloads),
            "seeds": [p["seed"] for p in payloads],
            "config": payloads[0]["config"],
            "summary": aggregate_summaries(summaries).to_dict(),
        }
    combined_path = base / COMBINED_NAME
    write_summary(combined_path, {"preset": preset.name, "cells": combined_cells})
    return combined_path


def default_jobs() -> int:
    return max(1, min(8, os.cpu_count() or 1))
