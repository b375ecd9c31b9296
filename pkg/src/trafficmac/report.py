"""Quick-look figures rendered from sweep outputs, next to the CSV/JSON data."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .metrics import AGGREGATE_KEY, read_summary, read_trace
from .presets import PROTOCOLS, RADII
from .config import TRAFFIC_LEVELS

PROTOCOL_COLORS = {"tdma": "#1f77b4", "aloha": "#ff7f0e", "csma": "#2ca02c"}
PROTOCOL_LABELS = {"tdma": "TDMA", "aloha": "slotted Aloha", "csma": "CSMA/CA"}


def _combined(sweep_dir) -> dict:
    return read_summary(Path(sweep_dir) / "combined.json")["cells"]


def _require(cells: dict, key: str) -> dict:
    if key not in cells:
        raise ValueError(f"missing series: {key}")
    return cells[key]


def plot_accuracy(sweep_dir, out_path) -> Path:
    """Information-error distributions per protocol and traffic level."""
    sweep = Path(sweep_dir)
    levels = list(TRAFFIC_LEVELS)
    fig, axes = plt.subplots(1, len(levels), figsize=(12, 4), sharey=True)
    for ax, level in zip(axes, levels):
        data, labels = [], []
        for protocol in PROTOCOLS:
            trace = sweep / f"{protocol}-{level}" / "rep00" / "trace.csv"
            if not trace.exists():
                raise ValueError(f"missing series: {protocol}-{level}")
            records = read_trace(trace)
            data.append([r.aggregate.a for r in records])
            labels.append(PROTOCOL_LABELS[protocol])
        ax.boxplot(data, tick_labels=labels, whis=(0, 100))
        ax.axhline(0.0, color="grey", linewidth=0.8)
        ax.set_title(f"{level} traffic")
        ax.set_ylabel("information error")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return Path(out_path)


def _utilization_bars(cells: dict, coordinated: bool) -> dict[str, list[float]]:
    suffix = "coordinated" if coordinated else "uncoordinated"
    series = {}
    for protocol in PROTOCOLS:
        values = []
        for radius in RADII:
            cell = _require(cells, f"{protocol}-{suffix}-r{radius}")
            values.append(cell["summary"]["mean_utilization"])
        series[protocol] = values
    return series


def plot_utilization(sweep_dir, out_path, coordinated: bool = False) -> Path:
    """Mean spectrum utilisation per protocol over neighbor radii.

    With ``coordinated`` the coordinated bars overlay the uncoordinated ones
    (side by side, not stacked)."""
    cells = _combined(sweep_dir)
    x = np.arange(len(RADII), dtype=float)
    fig, ax = plt.subplots(figsize=(8, 4.5))
    if coordinated:
        width = 0.13
        for i, protocol in enumerate(PROTOCOLS):
            unc = [_require(cells, f"{protocol}-uncoordinated-r{r}")["summary"]["mean_utilization"]
                   for r in RADII]
            coord = [_require(cells, f"{protocol}-coordinated-r{r}")["summary"]["mean_utilization"]
                     for r in RADII]
            base = x + (i - 1) * 2.2 * width
            color = PROTOCOL_COLORS[protocol]
            ax.bar(base, unc, width, color=color, alpha=0.4,
                   label=f"{PROTOCOL_LABELS[protocol]} uncoordinated")
            ax.bar(base + width, coord, width, color=color,
                   label=f"{PROTOCOL_LABELS[protocol]} coordinated")
    else:
        width = 0.25
        for i, protocol in enumerate(PROTOCOLS):
            values = [_require(cells, f"{protocol}-r{r}")["summary"]["mean_utilization"]
                      for r in RADII]
            ax.bar(x + (i - 1) * width, values, width,
                   color=PROTOCOL_COLORS[protocol], label=PROTOCOL_LABELS[protocol])
    ax.set_xticks(x, [str(r) for r in RADII])
    ax.set_xlabel("neighbor radius")
    ax.set_ylabel("mean spectrum utilisation")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return Path(out_path)


def plot_abs_error_box(sweep_dir, out_path) -> Path:
    """Box plot of |error| from the averaged per-run statistics."""
    cells = _combined(sweep_dir)
    stats = []
    for protocol in ("csma", "aloha"):
        for arm in ("uncoordinated", "coordinated"):
            summary = _require(cells, f"{protocol}-{arm}")["summary"]
            stats.append({
                "label": f"{PROTOCOL_LABELS[protocol]}\n{arm}",
                "med": summary["median_abs_error"],
                "q1": summary["q1_abs_error"],
                "q3": summary["q3_abs_error"],
                "whislo": summary["min_abs_error"],
                "whishi": summary["max_abs_error"],
                "fliers": [],
            })
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bxp(stats, showfliers=False)
    ax.set_ylabel("|information error| (averaged run statistics)")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return Path(out_path)


def plot_rings(rounds_csv, out_path, max_rounds: int = 12, trial: int = 0) -> Path:
    """Slot-ring occupancy diagrams, one small ring per round."""
    rows = []
    with open(rounds_csv, "r", encoding="utf-8") as handle:
        header = handle.readline().strip().split(",")
        if header != ["trial", "round", "dm_id", "slot", "collided"]:
            raise ValueError(f"unexpected rounds header: {header}")
        for line in handle:
            t, rnd, dm, slot, collided = line.strip().split(",")
            if int(t) == trial:
                rows.append((int(rnd), int(dm), int(slot), int(collided)))
    if not rows:
        raise ValueError(f"no rows for trial {trial}")
    round_time = max(slot for _, _, slot, _ in rows) + 1
    rounds = sorted({rnd for rnd, _, _, _ in rows})[:max_rounds]
    cols = min(6, len(rounds))
    rows_n = (len(rounds) + cols - 1) // cols
    fig, axes = plt.subplots(rows_n, cols, figsize=(2.2 * cols, 2.2 * rows_n),
                             subplot_kw={"aspect": "equal"})
    axes = np.atleast_1d(axes).ravel()
    for ax in axes:
        ax.axis("off")
    for ax, rnd in zip(axes, rounds):
        angles = [2 * np.pi * s / round_time for s in range(round_time)]
        ax.scatter(np.cos(angles), np.sin(angles), s=200, facecolors="none",
                   edgecolors="grey")
        for _, dm, slot, collided in [r for r in rows if r[0] == rnd]:
            angle = 2 * np.pi * slot / round_time
            ax.scatter([np.cos(angle)], [np.sin(angle)], s=160,
                       color="tab:red" if collided else f"C{dm}")
            ax.annotate(str(dm), (np.cos(angle), np.sin(angle)),
                        ha="center", va="center", fontsize=7, color="white")
        ax.set_title(f"round {rnd}", fontsize=8)
        ax.set_xlim(-1.4, 1.4)
        ax.set_ylim(-1.4, 1.4)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return Path(out_path)


def render_preset(preset_name: str, sweep_dir, out_dir) -> list[Path]:
    """Render the standard figures for a completed sweep into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sweep = Path(sweep_dir)
    written = []
    if preset_name == "fig5-accuracy":
        written.append(plot_accuracy(sweep, out / "fig5-accuracy.png"))
    elif preset_name == "fig6-utilization":
        cells = _combined(sweep)
        x = np.arange(len(RADII), dtype=float)
        fig, ax = plt.subplots(figsize=(8, 4.5))
        for i, protocol in enumerate(PROTOCOLS):
            values = [_require(cells, f"{protocol}-r{r}")["summary"]["mean_utilization"]
                      for r in RADII]
            ax.bar(x + (i - 1) * 0.25, values, 0.25,
                   color=PROTOCOL_COLORS[protocol], label=PROTOCOL_LABELS[protocol])
        ax.set_xticks(x, [str(r) for r in RADII])
        ax.set_xlabel("neighbor radius")
        ax.set_ylabel("mean spectrum utilisation")
        ax.legend()
        fig.tight_layout()
        path = out / "fig6-utilization.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    elif preset_name == "fig10-abs-error":
        written.append(plot_abs_error_box(sweep, out / "fig10-abs-error.png"))
    elif preset_name == "fig11-utilization-coord":
        written.append(plot_utilization(sweep, out / "fig11-utilization-coord.png",
                                        coordinated=True))
    elif preset_name in ("desync-convergence", "lmac-convergence"):
        for cell_dir in sorted(p for p in sweep.iterdir() if p.is_dir()):
            rounds = cell_dir / "rounds.csv"
            if rounds.exists():
                written.append(plot_rings(rounds, out / f"{cell_dir.name}-rings.png"))
    else:
        raise ValueError(f"no figures defined for preset {preset_name}")
    return written
