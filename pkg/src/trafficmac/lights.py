"""Traffic-light control: the three-phase signal cycle and dwell decisions."""
from __future__ import annotations

from enum import Enum


class LightPhase(Enum):
    ALL_RED = "all_red"
    EW_GREEN = "ew_green"
    NS_GREEN = "ns_green"


ALL_RED_DWELL = 9
MIN_DWELL = 5
MAX_DWELL = 30

_GREEN_HEADINGS = {
    LightPhase.ALL_RED: frozenset(),
    LightPhase.EW_GREEN: frozenset({"E", "W"}),
    LightPhase.NS_GREEN: frozenset({"N", "S"}),
}


class LightController:
    """Per-intersection signal state machine.

    The controller dwells ``ew_dwell`` cycles with the east-west axis green,
    ``ns_dwell`` cycles with the north-south axis green, and exactly
    ``ALL_RED_DWELL`` cycles all-red between the two greens so the crossing
    can clear.  Greens always alternate; there is no direct green-to-green
    transition.
    """

    def __init__(self, ew_dwell: int = 10, ns_dwell: int = 10):
        self.phase = LightPhase.EW_GREEN
        self.timer = 0
        self.ew_dwell = ew_dwell
        self.ns_dwell = ns_dwell
        self.next_green = LightPhase.NS_GREEN

    def dwell_of(self, phase: LightPhase) -> int:
        if phase is LightPhase.EW_GREEN:
            return self.ew_dwell
        if phase is LightPhase.NS_GREEN:
            return self.ns_dwell
        return ALL_RED_DWELL

    def step(self) -> LightPhase:
        """Advance one cycle; returns the phase governing the next cycle."""
        self.timer += 1
        if self.timer >= self.dwell_of(self.phase):
            if self.phase is LightPhase.ALL_RED:
                self.phase = self.next_green
            else:
                self.next_green = (
                    LightPhase.NS_GREEN
                    if self.phase is LightPhase.EW_GREEN
                    else LightPhase.EW_GREEN
                )
                self.phase = LightPhase.ALL_RED
            self.timer = 0
        return self.phase

    def is_green(self, heading: str) -> bool:
        return heading in _GREEN_HEADINGS[self.phase]


def clamp_dwell(value: int) -> int:
    return max(MIN_DWELL, min(MAX_DWELL, value))


class DecisionMaker:
    """Per-intersection controller fed by delivered sensor reports."""

    def __init__(self, dm_id: int, controller: LightController):
        self.dm_id = dm_id
        self.controller = controller
        self.reported_ew = 0
        self.reported_ns = 0

    def record_delivery(self, heading: str) -> None:
        if heading in ("E", "W"):
            self.reported_ew += 1
        else:
            self.reported_ns += 1

    def decide(self) -> tuple[int, int]:
        """Refresh the green dwells from the reports gathered since the last decision.

        Twice the reported waiting count per axis, clamped to [5, 30]; a pure
        function of the report counters, which reset here.
        """
        ew = clamp_dwell(2 * self.reported_ew)
        ns = clamp_dwell(2 * self.reported_ns)
        self.controller.ew_dwell = ew
        self.controller.ns_dwell = ns
        self.reported_ew = 0
        self.reported_ns = 0
        return ew, ns
