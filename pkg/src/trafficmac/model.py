"""World state and the per-cycle engine.

A cycle spends exactly ``t_max`` ticks: one tick moves and spawns vehicles,
``t_max - 2`` ticks carry sensor transmissions, and the final tick takes the
measurement snapshot and lets the decision makers act.  The whole run is
single-threaded and deterministic for a fixed (config, seed).
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import ConfigError, SimConfig
from .geometry import DELTA, GridLayout, step_pos
from .lights import DecisionMaker, LightController
from .mac_lower import (
    BACKOFF_WINDOW,
    ChannelModel,
    Packet,
    PacketStatus,
    aloha_backoff,
    csma_grant,
    tdma_assign,
)
from .mac_upper import SlotSchedule, centralized_schedule, run_until_converged
from .metrics import CycleRecord, snapshot
from .rng import StreamSet


@dataclass(slots=True)
class Vehicle:
    vehicle_id: int
    pos: tuple[int, int]
    heading: str
    spawned_cycle: int


class Sensor:
    """Watches one road cell and reports stopped vehicles to its intersection's DM."""

    __slots__ = ("sensor_id", "cell", "heading", "owner", "prev_occupant",
                 "packet", "last_detect_cycle")

    def __init__(self, sensor_id: int, cell: tuple[int, int], heading: str, owner: int):
        self.sensor_id = sensor_id
        self.cell = cell
        self.heading = heading
        self.owner = owner
        self.prev_occupant: int | None = None
        self.packet: Packet | None = None
        self.last_detect_cycle = -1


class SimulationModel:
    """The complete mutable world advanced cycle by cycle."""

    def __init__(self, config: SimConfig):
        config.validate()
        self.config = config
        self.layout = GridLayout(config.intersections)
        self.streams = StreamSet(config.seed)
        self.channel = ChannelModel(config.neighbor_radius)

        self.vehicles: dict[int, Vehicle] = {}
        self.occupancy: dict[tuple[int, int], int] = {}
        self.next_vehicle_id = 0
        self.cycle = 0

        self.controllers = [LightController() for _ in range(config.intersections)]
        self.dms = [DecisionMaker(i, self.controllers[i]) for i in range(config.intersections)]

        self.sensors = [Sensor(site.sensor_id, site.cell, site.heading, site.intersection)
                        for site in self.layout.sensors]
        self.sensor_by_id = self.sensors  # ids are dense and ordered
        self.holders: set[int] = set()    # sensors currently holding a packet
        self.dm_sensor_ids = [
            [s.sensor_id for s in self.sensors if s.owner == dm] for dm in range(config.intersections)
        ]

        self.coordinated = config.upper_mac is not None
        self.upper_schedule: SlotSchedule | None = None
        self.slot_owner: list[int | None] = []
        self.ring_offset = 0
        if self.coordinated:
            self._build_upper_schedule()

        self.tdma_map: dict[int, list[int]] = {}
        if config.lower_mac == "tdma" and config.intersections == 1 and not self.coordinated:
            self._build_tdma_map(None)  # one controller: packed, collision-free

        self.cycle_stats = self._fresh_stats()

    # -- construction ---------------------------------------------------

    def _build_upper_schedule(self) -> None:
        cfg = self.config
        dm_ids = range(cfg.intersections)
        if cfg.upper_mac == "centralized":
            schedule = centralized_schedule(dm_ids, cfg.round_time)
        else:
            # the decentralised schemes settle their schedule before traffic
            # starts; the converged assignment stays fixed for the whole run
            schedule, _rounds = run_until_converged(
                cfg.upper_mac, cfg.intersections, cfg.round_time,
                self.streams.stream("upper"),
            )
            if not schedule.collision_free:
                raise ConfigError("upper_mac", "coordination scheme failed to converge")
        self.upper_schedule = schedule
        self.slot_owner = [schedule.owner_of(s) for s in range(cfg.round_time)]

    def _build_tdma_map(self, rng) -> None:
        window = self.config.transmission_ticks
        self.tdma_map = {}
        for dm in range(self.config.intersections):
            slots = tdma_assign(self.dm_sensor_ids[dm], window, rng)
            for sid, tick in slots.items():
                self.tdma_map.setdefault(tick, []).append(sid)
        for ids in self.tdma_map.values():
            ids.sort()

    def _fresh_stats(self) -> dict:
        n = self.config.intersections
        return {
            "delivered": [0] * n,
            "collisions": [0] * n,
            "backoffs": [0] * n,
            "discards": [0] * n,
            "spawned": 0,
            "exited": 0,
            "moved": 0,
        }

    # -- queries ---------------------------------------------------------

    def vehicle_blocked_now(self, vehicle: Vehicle) -> bool:
        """Would this vehicle be unable to advance if movement ran now?"""
        nxt = step_pos(vehicle.pos, vehicle.heading)
        if not self.layout.in_bounds(nxt):
            return False
        if nxt in self.occupancy:
            return True
        beyond = step_pos(nxt, vehicle.heading)
        if beyond in self.occupancy:
            return True
        stop = self.layout.stop_lines.get(nxt)
        if stop is not None and stop[0] == vehicle.heading:
            return not self.controllers[stop[1]].is_green(vehicle.heading)
        return False

    def deciding_dms(self) -> list[DecisionMaker]:
        """DMs whose turn it is: everyone when uncoordinated, otherwise the
        owners of the higher-MAC slots that completed this cycle."""
        if not self.coordinated:
            return list(self.dms)
        slots_this_cycle = self.config.transmission_ticks // self.config.slot_ratio
        owners = []
        for k in range(slots_this_cycle):
            owner = self.slot_owner[(self.ring_offset + k) % self.config.round_time]
            if owner is not None and owner not in owners:
                owners.append(owner)
        return [self.dms[o] for o in sorted(owners)]

    # -- per-tick transmission machinery ----------------------------------

    def _deliver(self, sensor: Sensor) -> None:
        packet = sensor.packet
        packet.status = PacketStatus.DELIVERED
        self.dms[sensor.owner].record_delivery(sensor.heading)
        self.cycle_stats["delivered"][sensor.owner] += 1
        sensor.packet = None
        self.holders.discard(sensor.sensor_id)

    def _resolve_attempts(self, attempts: list[Sensor], rng_aloha) -> None:
        if len(attempts) == 1:
            self._deliver(attempts[0])
            return
        delivered, collided = self.channel.resolve(
            [(s.sensor_id, s.cell) for s in attempts])
        by_id = {s.sensor_id: s for s in attempts}
        for sid in delivered:
            self._deliver(by_id[sid])
        for sid in collided:
            sensor = by_id[sid]
            self.cycle_stats["collisions"][sensor.owner] += 1
            packet = sensor.packet
            packet.status = PacketStatus.COLLIDED
            if rng_aloha is not None:
                aloha_backoff(packet, rng_aloha)
                self.cycle_stats["backoffs"][sensor.owner] += 1
            # TDMA retries in its dedicated tick next cycle

    def run_transmission_ticks(self) -> None:
        cfg = self.config
        trans = cfg.transmission_ticks
        ratio = cfg.slot_ratio
        protocol = cfg.lower_mac
        coordinated = self.coordinated
        sensors = self.sensor_by_id
        holders = self.holders

        if protocol == "tdma" and (coordinated or cfg.intersections > 1):
            # with several controllers each re-polls its sensors every cycle:
            # fresh random slots over the whole window, so same-tick clashes
            # are transient rather than locked in for the run; under
            # coordination attempts landing in another DM's window are
            # rejected and held
            self._build_tdma_map(self.streams.stream("tdma"))
        rng_aloha = self.streams.stream("aloha") if protocol == "aloha" else None
        rng_csma = self.streams.stream("csma") if protocol == "csma" else None

        for tick in range(1, trans + 1):
            active = None
            if coordinated:
                slot = (self.ring_offset + (tick - 1) // ratio) % cfg.round_time
                active = self.slot_owner[slot]

            if protocol == "tdma":
                ids = self.tdma_map.get(tick)
                if not ids:
                    continue
                attempts = []
                for sid in ids:
                    sensor = sensors[sid]
                    if sensor.packet is None:
                        continue
                    if coordinated and sensor.owner != active:
                        continue  # rejected by the selected DM; packet is held
                    attempts.append(sensor)
                if attempts:
                    self._resolve_attempts(attempts, None)

            elif protocol == "aloha":
                if holders:
                    attempts = []
                    for sid in sorted(holders):
                        sensor = sensors[sid]
                        if coordinated and sensor.owner != active:
                            continue  # held: the sensor's MAC pauses outside its window
                        packet = sensor.packet
                        if packet.backoff_remaining > 0:
                            packet.backoff_remaining -= 1
                            continue
                        attempts.append(sensor)
                    if attempts:
                        self._resolve_attempts(attempts, rng_aloha)
                    # the timeout spans two transmission windows so that a
                    # report backed off across the movement step still gets
                    # retried (and can arrive stale) before it is dropped
                    self._age_and_discard(2 * trans)

            else:  # csma
                if holders:
                    intents = []
                    for sid in sorted(holders):
                        sensor = sensors[sid]
                        if coordinated and sensor.owner != active:
                            continue  # held: the sensor's MAC pauses outside its window
                        packet = sensor.packet
                        if packet.backoff_remaining > 0:
                            packet.backoff_remaining -= 1
                            continue
                        intents.append((sid, sensor.cell))
                    if intents:
                        winners, losers = csma_grant(intents, self.channel, rng_csma)
                        for sid in winners:
                            self._deliver(sensors[sid])
                        for sid in losers:
                            sensor = sensors[sid]
                            packet = sensor.packet
                            packet.backoff_remaining = rng_csma.randint(1, BACKOFF_WINDOW)
                            packet.status = PacketStatus.BACKED_OFF
                            self.cycle_stats["backoffs"][sensor.owner] += 1

    def _age_and_discard(self, timeout: int) -> None:
        # ageing runs after the tick's attempts, so a packet may still be
        # transmitted on the tick its timeout expires
        expired = []
        for sid in self.holders:
            packet = self.sensor_by_id[sid].packet
            packet.age_ticks += 1
            if packet.age_ticks > timeout:
                expired.append(sid)
        for sid in sorted(expired):
            sensor = self.sensor_by_id[sid]
            sensor.packet.status = PacketStatus.DISCARDED
            sensor.packet = None
            self.holders.discard(sid)
            self.cycle_stats["discards"][sensor.owner] += 1

    def advance_ring(self) -> None:
        if self.coordinated:
            slots = self.config.transmission_ticks // self.config.slot_ratio
            self.ring_offset = (self.ring_offset + slots) % self.config.round_time

    def check_invariants(self) -> None:
        if len(self.occupancy) != len(self.vehicles):
            raise AssertionError("two vehicles share a cell")


def build_model(config: SimConfig) -> SimulationModel:
    """Lay out the grid, sensors, lights and decision makers for a run."""
    return SimulationModel(config)


def move_vehicles(model: SimulationModel) -> int:
    """Advance every vehicle one cell along its heading.

    Decisions come from the pre-move snapshot and apply in ascending id, so
    the outcome does not depend on iteration order.  A vehicle holds still
    when the next cell or the one beyond it is occupied, or when the next
    cell is a stop line showing red for its heading; vehicles leaving the
    grid are removed.
    """
    occ = model.occupancy
    layout = model.layout
    controllers = model.controllers
    moves: list[tuple[int, tuple[int, int]]] = []
    exits: list[int] = []

    for vid in sorted(model.vehicles):
        vehicle = model.vehicles[vid]
        nxt = step_pos(vehicle.pos, vehicle.heading)
        if not layout.in_bounds(nxt):
            exits.append(vid)
            continue
        if nxt in occ:
            continue
        beyond = step_pos(nxt, vehicle.heading)
        if beyond in occ:
            continue
        stop = layout.stop_lines.get(nxt)
        if stop is not None and stop[0] == vehicle.heading \
                and not controllers[stop[1]].is_green(vehicle.heading):
            continue
        moves.append((vid, nxt))

    for vid in exits:
        vehicle = model.vehicles.pop(vid)
        del occ[vehicle.pos]

    taken: set[tuple[int, int]] = set()
    moved = len(exits)
    for vid, target in moves:
        if target in taken:
            continue  # two streams claimed the same crossing cell; lower id wins
        taken.add(target)
        vehicle = model.vehicles[vid]
        del occ[vehicle.pos]
        vehicle.pos = target
        occ[target] = vid
        moved += 1

    model.cycle_stats["exited"] += len(exits)
    model.cycle_stats["moved"] += moved
    return moved


def spawn_vehicles(model: SimulationModel) -> int:
    """One spawn trial per intersection; entries drawn uniformly over all
    inbound edge cells.  A blocked entry discards the new vehicle."""
    cfg = model.config
    rng = model.streams.stream("spawn")
    entries = model.layout.entries
    spawned = 0
    for _ in range(cfg.intersections):
        if rng.random() >= cfg.p_new_vehicle:
            continue
        pos, heading = entries[rng.randrange(len(entries))]
        if pos in model.occupancy or step_pos(pos, heading) in model.occupancy:
            continue
        vid = model.next_vehicle_id
        model.next_vehicle_id += 1
        model.vehicles[vid] = Vehicle(vid, pos, heading, model.cycle)
        model.occupancy[pos] = vid
        spawned += 1
    model.cycle_stats["spawned"] += spawned
    return spawned


def sense(sensor: Sensor, model: SimulationModel) -> Packet | None:
    """Stopped-vehicle detection: the same vehicle occupies the watched cell
    on two consecutive cycles.

    A sensor holds a single report.  Re-detecting the same vehicle refreshes
    the held report (content and timeout clock) without resetting its retry
    state; a detection of a different vehicle replaces any undelivered stale
    report outright."""
    occupant = model.occupancy.get(sensor.cell)
    packet = None
    if occupant is not None and occupant == sensor.prev_occupant:
        held = sensor.packet
        if held is not None and held.vehicle_id == occupant:
            held.detect_cycle = model.cycle
            held.age_ticks = 0
            packet = held
        else:
            packet = Packet(sensor.sensor_id, occupant, model.cycle)
            sensor.packet = packet
        sensor.last_detect_cycle = model.cycle
        model.holders.add(sensor.sensor_id)
    sensor.prev_occupant = occupant
    return packet


def step_cycle(model: SimulationModel) -> CycleRecord:
    """Run one full cycle and return its measurement record."""
    model.cycle_stats = model._fresh_stats()

    # tick 0: the world moves
    move_vehicles(model)
    spawn_vehicles(model)
    for sensor in model.sensors:
        sense(sensor, model)

    # ticks 1 .. t_max-2: the sensors talk
    model.run_transmission_ticks()

    # final tick: measure, then decide
    record = snapshot(model)
    for dm in model.deciding_dms():
        dm.decide()
    for controller in model.controllers:
        controller.step()
    model.advance_ring()
    model.check_invariants()
    model.cycle += 1
    return record
