"""Deterministic agent-based simulator of MAC protocols for a road-traffic
sensor network: TDMA, slotted Aloha and CSMA/CA on the sensor side, with
optional higher-MAC coordination of the per-intersection decision makers."""

from .config import ConfigError, SimConfig, TRAFFIC_LEVELS
from .lights import DecisionMaker, LightController, LightPhase
from .mac_lower import BACKOFF_WINDOW, ChannelModel, Packet, PacketStatus, tdma_assign
from .mac_upper import (
    LmacState,
    SlotSchedule,
    centralized_schedule,
    desync_round,
    lmac_choose,
    lmac_update,
    ring_midpoint,
    run_until_converged,
)
from .metrics import CycleRecord, RunSummary, accuracy, snapshot, summarize, utilization
from .model import SimulationModel, build_model, move_vehicles, sense, spawn_vehicles, step_cycle
from .presets import PRESETS
from .runner import run_simulation, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BACKOFF_WINDOW",
    "ChannelModel",
    "ConfigError",
    "CycleRecord",
    "DecisionMaker",
    "LightController",
    "LightPhase",
    "LmacState",
    "PRESETS",
    "Packet",
    "PacketStatus",
    "RunSummary",
    "SimConfig",
    "SimulationModel",
    "SlotSchedule",
    "TRAFFIC_LEVELS",
    "accuracy",
    "build_model",
    "centralized_schedule",
    "desync_round",
    "lmac_choose",
    "lmac_update",
    "move_vehicles",
    "ring_midpoint",
    "run_simulation",
    "run_sweep",
    "run_until_converged",
    "sense",
    "snapshot",
    "spawn_vehicles",
    "step_cycle",
    "summarize",
    "tdma_assign",
    "utilization",
]
