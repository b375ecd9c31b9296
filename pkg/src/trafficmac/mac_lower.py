"""Lower-MAC channel model: radius-based collisions, TDMA slots, slotted Aloha
and CSMA/CA building blocks.

Two simultaneous senders interfere when their watched cells are within
``neighbor_radius`` in Chebyshev distance; radius 1 is the eight-cell
neighbourhood around a sensor.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .geometry import chebyshev

BACKOFF_WINDOW = 5


class PacketStatus(Enum):
    PENDING = "pending"
    BACKED_OFF = "backed_off"
    DELIVERED = "delivered"
    COLLIDED = "collided"
    DISCARDED = "discarded"


@dataclass(slots=True)
class Packet:
    """One sensor detection report in flight."""

    sensor_id: int
    vehicle_id: int
    detect_cycle: int
    backoff_remaining: int = 0
    age_ticks: int = 0
    status: PacketStatus = PacketStatus.PENDING


class ChannelModel:
    """Shared radio medium with a Chebyshev interference radius."""

    def __init__(self, neighbor_radius: int):
        if neighbor_radius < 1:
            raise ValueError("neighbor_radius must be >= 1")
        self.neighbor_radius = neighbor_radius

    def in_range(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        return chebyshev(a, b) <= self.neighbor_radius

    def resolve(self, attempts: list[tuple[int, tuple[int, int]]]) -> tuple[list[int], list[int]]:
        """Split simultaneous attempts into delivered and collided keys.

        An attempt is delivered iff no other attempting sender lies within
        the interference radius; collisions are symmetric.
        """
        if len(attempts) == 1:
            return [attempts[0][0]], []
        delivered, collided = [], []
        radius = self.neighbor_radius
        for i, (key, pos) in enumerate(attempts):
            hit = False
            for j, (_, other) in enumerate(attempts):
                if i != j and chebyshev(pos, other) <= radius:
                    hit = True
                    break
            (collided if hit else delivered).append(key)
        return delivered, collided


def tdma_assign(sensor_ids, window_ticks: int, rng: random.Random | None = None) -> dict[int, int]:
    """Distinct transmission ticks (1-based) for one controller's sensors.

    Without ``rng`` the sensors are packed into the first ticks of the window
    in id order; with ``rng`` they receive a uniformly random injective
    mapping into the whole window.
    """
    ids = sorted(sensor_ids)
    if window_ticks < len(ids):
        raise ValueError("transmission window smaller than sensor count")
    if rng is None:
        return {sid: i + 1 for i, sid in enumerate(ids)}
    ticks = rng.sample(range(1, window_ticks + 1), len(ids))
    return dict(zip(ids, ticks))


def csma_grant(intents: list[tuple[int, tuple[int, int]]], channel: ChannelModel,
               rng: random.Random) -> tuple[list[int], list[int]]:
    """Carrier-sense arbitration among simultaneous intenders.

    Every potential collision is sensed before transmission, so no collision
    ever occurs: a uniformly random maximal set of mutually out-of-range
    intenders transmits and everyone else backs off.
    """
    order = sorted(intents)
    rng.shuffle(order)
    winners: list[tuple[int, tuple[int, int]]] = []
    losers: list[int] = []
    for key, pos in order:
        if any(channel.in_range(pos, taken) for _, taken in winners):
            losers.append(key)
        else:
            winners.append((key, pos))
    return [key for key, _ in winners], losers


def gate_by_upper(owner_dm: int, active_dm: int | None, coordinated: bool = True) -> bool:
    """Higher-MAC gate: may a sensor owned by ``owner_dm`` transmit now?"""
    if not coordinated:
        return True
    return owner_dm == active_dm


def aloha_backoff(packet: Packet, rng: random.Random) -> int:
    """Random retry delay after a collision."""
    packet.backoff_remaining = rng.randint(1, BACKOFF_WINDOW)
    packet.status = PacketStatus.BACKED_OFF
    return packet.backoff_remaining
