"""Run configuration: validation, traffic presets and the JSON config contract."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields

LOWER_MACS = ("tdma", "aloha", "csma")
UPPER_MACS = ("centralized", "desync", "lmac")
TRAFFIC_LEVELS = {"low": 0.2, "medium": 0.5, "high": 0.8}
SUPPORTED_INTERSECTIONS = (1, 2, 4)


class ConfigError(ValueError):
    """Invalid configuration; carries the offending field name."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


@dataclass
class SimConfig:
    """Parameters of one simulation run.

    ``round_time`` and ``slot_ratio`` only matter when ``upper_mac`` is set;
    one higher-MAC slot is then worth ``slot_ratio`` transmission ticks.
    """

    t_max: int = 42
    p_new_vehicle: float = 0.5
    neighbor_radius: int = 15
    lower_mac: str = "tdma"
    upper_mac: str | None = None
    round_time: int = 1
    slot_ratio: int = 20
    intersections: int = 1
    seed: int = 1
    total_cycles: int = 1000

    @property
    def transmission_ticks(self) -> int:
        # one tick for movement/spawning, one for the decision step
        return self.t_max - 2

    def validate(self) -> None:
        if not isinstance(self.t_max, int) or self.t_max < 3:
            raise ConfigError("t_max", "must be an integer >= 3 (transmission window t_max - 2 >= 1)")
        if not 0.0 <= self.p_new_vehicle <= 1.0:
            raise ConfigError("p_new_vehicle", "must lie in [0, 1]")
        if not isinstance(self.neighbor_radius, int) or self.neighbor_radius < 1:
            raise ConfigError("neighbor_radius", "must be an integer >= 1")
        if self.lower_mac not in LOWER_MACS:
            raise ConfigError("lower_mac", f"must be one of {LOWER_MACS}")
        if self.lower_mac == "tdma" and self.transmission_ticks < 20:
            raise ConfigError("t_max", "TDMA needs at least 20 transmission ticks "
                                       "(one per sensor of a decision maker)")
        if self.upper_mac is not None and self.upper_mac not in UPPER_MACS:
            raise ConfigError("upper_mac", f"must be null or one of {UPPER_MACS}")
        if self.intersections not in SUPPORTED_INTERSECTIONS:
            raise ConfigError("intersections", f"must be one of {SUPPORTED_INTERSECTIONS}")
        if not isinstance(self.seed, int):
            raise ConfigError("seed", "must be an integer")
        if not isinstance(self.total_cycles, int) or self.total_cycles < 1:
            raise ConfigError("total_cycles", "must be an integer >= 1")
        if self.upper_mac is not None:
            if not isinstance(self.round_time, int) or self.round_time < 1:
                raise ConfigError("round_time", "must be an integer >= 1")
            if self.round_time < self.intersections:
                raise ConfigError("round_time", "must cover all decision makers")
            if not isinstance(self.slot_ratio, int) or self.slot_ratio < 1:
                raise ConfigError("slot_ratio", "must be an integer >= 1")
            if self.transmission_ticks % self.slot_ratio != 0:
                raise ConfigError(
                    "slot_ratio",
                    "transmission window (t_max - 2) must be a whole number of higher-MAC slots",
                )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SimConfig":
        known = {f.name for f in fields(cls)}
        for key in data:
            if key not in known:
                raise ConfigError(key, "unknown key")
        config = cls(**data)
        config.validate()
        return config

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(self.to_dict(), handle, indent=2, sort_keys=True)
            handle.write("\n")

    @classmethod
    def load(cls, path) -> "SimConfig":
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
        if not isinstance(data, dict):
            raise ConfigError("config", "top level must be a JSON object")
        return cls.from_dict(data)
