"""Experiment presets: the parameter grids behind the headline results.

Simulation presets expand into (cell key, config) pairs, one replicate per
seed; convergence presets drive the higher-MAC schemes on their own, without
traffic, and record per-round slot choices.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .config import TRAFFIC_LEVELS, SimConfig

RADII = (5, 10, 15, 20, 25)
PROTOCOLS = ("tdma", "aloha", "csma")


@dataclass(frozen=True)
class SimulationCell:
    key: str
    config: SimConfig
    replicate: int


@dataclass(frozen=True)
class ConvergenceCell:
    key: str
    protocol: str
    dm_count: int
    round_time: int
    trials: int
    max_rounds: int
    initial: str  # "spread", "cluster" or "random"


@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    kind: str  # "simulation" or "convergence"
    description: str
    replicates: int = 1
    default_root_seed: int = 1000

    def cells(self, root_seed: int | None = None):
        root = self.default_root_seed if root_seed is None else root_seed
        builder = _BUILDERS[self.name]
        return builder(self, root)


def _replicated(preset: ExperimentPreset, root: int, grid: list[tuple[str, SimConfig]]):
    cells = []
    for key, config in grid:
        for rep in range(preset.replicates):
            cells.append(SimulationCell(key, replace(config, seed=root + rep), rep))
    return cells


def _fig5(preset: ExperimentPreset, root: int):
    grid = []
    for protocol in PROTOCOLS:
        for level, p in TRAFFIC_LEVELS.items():
            grid.append((
                f"{protocol}-{level}",
                SimConfig(t_max=42, p_new_vehicle=p, neighbor_radius=15,
                          lower_mac=protocol, intersections=1, total_cycles=10_000),
            ))
    return _replicated(preset, root, grid)


def _fig6(preset: ExperimentPreset, root: int):
    grid = []
    for protocol in PROTOCOLS:
        for radius in RADII:
            grid.append((
                f"{protocol}-r{radius}",
                SimConfig(t_max=42, p_new_vehicle=0.5, neighbor_radius=radius,
                          lower_mac=protocol, intersections=2, total_cycles=10_000),
            ))
    return _replicated(preset, root, grid)


def _fig10(preset: ExperimentPreset, root: int):
    # the coordinated arm fits the whole 4-slot round into each cycle
    # (4 x 20 transmission ticks); the uncoordinated arm uses the standard
    # 40-tick window
    grid = []
    for protocol in ("aloha", "csma"):
        grid.append((
            f"{protocol}-uncoordinated",
            SimConfig(t_max=42, p_new_vehicle=0.5, neighbor_radius=10,
                      lower_mac=protocol, intersections=4, total_cycles=5_000),
        ))
        grid.append((
            f"{protocol}-coordinated",
            SimConfig(t_max=82, p_new_vehicle=0.5, neighbor_radius=10,
                      lower_mac=protocol, upper_mac="lmac", round_time=4,
                      slot_ratio=20, intersections=4, total_cycles=5_000),
        ))
    return _replicated(preset, root, grid)


def _fig11(preset: ExperimentPreset, root: int):
    grid = []
    for protocol in PROTOCOLS:
        for radius in RADII:
            grid.append((
                f"{protocol}-uncoordinated-r{radius}",
                SimConfig(t_max=42, p_new_vehicle=0.5, neighbor_radius=radius,
                          lower_mac=protocol, intersections=2, total_cycles=10_000),
            ))
            grid.append((
                f"{protocol}-coordinated-r{radius}",
                SimConfig(t_max=42, p_new_vehicle=0.5, neighbor_radius=radius,
                          lower_mac=protocol, upper_mac="lmac", round_time=2,
                          slot_ratio=20, intersections=2, total_cycles=10_000),
            ))
    return _replicated(preset, root, grid)


def _desync(preset: ExperimentPreset, root: int):
    return [
        ConvergenceCell("desync-c4-spread", "desync", 4, 4, 100, 500, "spread"),
        ConvergenceCell("desync-c8-cluster", "desync", 4, 8, 100, 500, "cluster"),
        ConvergenceCell("desync-c6-cluster", "desync", 4, 6, 100, 500, "cluster"),
    ]


def _lmac(preset: ExperimentPreset, root: int):
    return [
        ConvergenceCell(f"lmac-c{c}", "lmac", 4, c, 1000, 500, "random")
        for c in (4, 5, 6, 8)
    ]


PRESETS = {
    "fig5-accuracy": ExperimentPreset(
        "fig5-accuracy", "simulation",
        "single intersection, radius 15: information error per protocol and traffic level"),
    "fig6-utilization": ExperimentPreset(
        "fig6-utilization", "simulation",
        "two intersections, uncoordinated: spectrum utilisation over neighbor radii"),
    "fig10-abs-error": ExperimentPreset(
        "fig10-abs-error", "simulation",
        "four intersections, radius 10: |error| spread, coordinated vs uncoordinated",
        replicates=10),
    "fig11-utilization-coord": ExperimentPreset(
        "fig11-utilization-coord", "simulation",
        "two intersections: utilisation, coordinated (2-slot ring) vs uncoordinated"),
    "desync-convergence": ExperimentPreset(
        "desync-convergence", "convergence",
        "ring desynchronisation of 4 DMs for round times 4, 8 and 6"),
    "lmac-convergence": ExperimentPreset(
        "lmac-convergence", "convergence",
        "slot learning of 4 DMs for round times 4, 5, 6 and 8"),
}

_BUILDERS = {
    "fig5-accuracy": _fig5,
    "fig6-utilization": _fig6,
    "fig10-abs-error": _fig10,
    "fig11-utilization-coord": _fig11,
    "desync-convergence": _desync,
    "lmac-convergence": _lmac,
}
