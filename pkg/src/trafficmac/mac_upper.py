"""Higher-MAC slot ring: fixed round-robin, ring desynchronisation, and
decentralised slot learning.

All three schemes produce a :class:`SlotSchedule` mapping decision makers to
slots on a ring of ``round_time`` slots.  The learning schemes are driven
round by round and report how many rounds they needed to reach a usable
schedule.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

DEFAULT_MAX_ROUNDS = 500
PROB_TOLERANCE = 1e-12


@dataclass
class SlotSchedule:
    """Assignment of decision makers to the ring of higher-MAC slots."""

    round_time: int
    dm_slots: dict[int, int]

    def owner_of(self, slot: int) -> int | None:
        for dm, s in self.dm_slots.items():
            if s == slot:
                return dm
        return None

    def occupancy(self) -> dict[int, list[int]]:
        occ: dict[int, list[int]] = {}
        for dm in sorted(self.dm_slots):
            occ.setdefault(self.dm_slots[dm], []).append(dm)
        return occ

    @property
    def collision_free(self) -> bool:
        slots = list(self.dm_slots.values())
        return len(set(slots)) == len(slots)


def centralized_schedule(dm_ids, round_time: int) -> SlotSchedule:
    """Round-robin slots handed out by a central coordinator, one per DM."""
    ids = sorted(dm_ids)
    if round_time < len(ids):
        raise ValueError("round time smaller than decision-maker count")
    return SlotSchedule(round_time, {dm: index for index, dm in enumerate(ids)})


def ring_midpoint(prev_slot: int, next_slot: int, round_time: int,
                  own_slot: int | None = None) -> int:
    """Midpoint of the ring arc running forward from ``prev_slot`` to ``next_slot``.

    Handles wraparound (the arc crossing slot 0) by working with the forward
    gap; when both neighbours share a slot the arc is the whole ring.
    ``own_slot`` is accepted for callers that track it but does not change
    the result.
    """
    gap = (next_slot - prev_slot) % round_time
    if gap == 0:
        gap = round_time
    return (prev_slot + gap // 2) % round_time


def _jitter_apart(slots: dict[int, int], round_time: int, rng: random.Random) -> None:
    # colliding occupants separate before anyone computes a midpoint: one
    # uniformly chosen occupant of each contested slot shifts one slot ahead
    for _ in range(1000 * max(1, len(slots))):
        occ: dict[int, list[int]] = {}
        for dm in sorted(slots):
            occ.setdefault(slots[dm], []).append(dm)
        contested = [slot for slot in sorted(occ) if len(occ[slot]) > 1]
        if not contested:
            return
        for slot in contested:
            mover = rng.choice(occ[slot])
            slots[mover] = (slot + 1) % round_time
    raise RuntimeError("slot jitter failed to separate decision makers")


def desync_round(slots: dict[int, int], round_time: int, rng: random.Random) -> dict[int, int]:
    """One full firing round of the ring-desynchronisation scheme.

    Occupants of a contested slot first jitter apart, then every DM fires in
    slot order and immediately moves to the midpoint between the nearest
    firing before and after its own.  Updates take effect within the round,
    so later firers see the moves already made (agents activate one by one).
    Returns the slots as fired this round (post-jitter, pre-update).
    """
    _jitter_apart(slots, round_time, rng)
    fired = dict(slots)
    if len(slots) < 2:
        return fired
    for dm in sorted(slots, key=lambda d: (fired[d], d)):
        own = slots[dm]
        others = [slots[o] for o in slots if o != dm]
        prev = min(others, key=lambda s: (own - s) % round_time)
        nxt = min(others, key=lambda s: (s - own) % round_time)
        slots[dm] = ring_midpoint(prev, nxt, round_time, own)
    return fired


def maximally_spaced(slots: dict[int, int], round_time: int) -> bool:
    """Collision-free with all ring gaps within one slot of each other."""
    values = sorted(slots.values())
    if len(set(values)) != len(values):
        return False
    if len(values) < 2:
        return True
    gaps = [values[i + 1] - values[i] for i in range(len(values) - 1)]
    gaps.append(round_time - values[-1] + values[0])
    return max(gaps) - min(gaps) <= 1


@dataclass
class LmacState:
    """Learning state of one DM: a slot distribution that hardens on success."""

    dm_id: int
    prob: list[float]
    locked: int | None = None

    @classmethod
    def uniform(cls, dm_id: int, round_time: int) -> "LmacState":
        return cls(dm_id, [1.0 / round_time] * round_time)


def check_distribution(prob: list[float]) -> None:
    if any(p < 0.0 for p in prob):
        raise ValueError("slot probabilities must be non-negative")
    total = sum(prob)
    if abs(total - 1.0) > PROB_TOLERANCE:
        raise ValueError(f"slot probabilities sum to {total!r}, not 1")


def lmac_choose(state: LmacState, rng: random.Random) -> int:
    if state.locked is not None:
        return state.locked
    return rng.choices(range(len(state.prob)), weights=state.prob)[0]


def lmac_update(state: LmacState, chosen_slot: int, collided: bool) -> LmacState:
    """Fold one round's outcome into the slot distribution.

    A first success locks the slot permanently (later collisions on it are
    ignored); a collision while unlocked halves the chosen slot's weight and
    renormalises.
    """
    if state.locked is not None:
        return state
    if collided:
        state.prob[chosen_slot] *= 0.5
        total = sum(state.prob)
        state.prob = [p / total for p in state.prob]
    else:
        state.locked = chosen_slot
        state.prob = [1.0 if i == chosen_slot else 0.0 for i in range(len(state.prob))]
    check_distribution(state.prob)
    return state


def spread_slots(dm_count: int, round_time: int) -> dict[int, int]:
    """Evenly spaced initial slots (the already-desynchronised layout)."""
    return {dm: (dm * round_time) // dm_count for dm in range(dm_count)}


def clustered_slots(dm_count: int, round_time: int, offset: int = 0) -> dict[int, int]:
    """Adjacent initial slots starting at ``offset`` (the worst-case layout)."""
    return {dm: (offset + dm) % round_time for dm in range(dm_count)}


def run_until_converged(protocol: str, dm_count: int, round_time: int, rng: random.Random,
                        max_rounds: int = DEFAULT_MAX_ROUNDS,
                        initial_slots: dict[int, int] | None = None,
                        history: list[tuple[int, int, int, bool]] | None = None,
                        ) -> tuple[SlotSchedule, int | None]:
    """Drive a decentralised scheme until its schedule is usable.

    Returns the final schedule and the 1-based round at which convergence was
    observed, or ``None`` when ``max_rounds`` passed without convergence.
    ``history`` (when given) receives one ``(round, dm_id, slot, collided)``
    row per DM per round.

    Desynchronisation converges when a collision-free, maximally spaced
    configuration repeats unchanged for a whole round; slot learning
    converges at the first collision-free round (every DM locks then).
    """
    if round_time < dm_count:
        raise ValueError("round time smaller than decision-maker count")
    dm_ids = list(range(dm_count))

    if protocol == "desync":
        if initial_slots is not None:
            slots = dict(initial_slots)
        else:
            slots = {dm: rng.randrange(round_time) for dm in dm_ids}
        for rnd in range(1, max_rounds + 1):
            before = dict(slots)
            fired = desync_round(slots, round_time, rng)
            if history is not None:
                for dm in dm_ids:
                    history.append((rnd, dm, fired[dm], False))
            if slots == before and maximally_spaced(slots, round_time):
                return SlotSchedule(round_time, dict(slots)), rnd
        return SlotSchedule(round_time, dict(slots)), None

    if protocol == "lmac":
        states = [LmacState.uniform(dm, round_time) for dm in dm_ids]
        chosen: dict[int, int] = {}
        for rnd in range(1, max_rounds + 1):
            chosen = {dm: lmac_choose(states[dm], rng) for dm in dm_ids}
            counts: dict[int, int] = {}
            for slot in chosen.values():
                counts[slot] = counts.get(slot, 0) + 1
            clean = True
            for dm in dm_ids:
                collided = counts[chosen[dm]] > 1
                clean = clean and not collided
                lmac_update(states[dm], chosen[dm], collided)
                if history is not None:
                    history.append((rnd, dm, chosen[dm], collided))
            if clean:
                return SlotSchedule(round_time, dict(chosen)), rnd
        return SlotSchedule(round_time, dict(chosen)), None

    raise ValueError(f"unknown coordination protocol: {protocol}")
