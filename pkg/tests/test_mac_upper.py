"""Higher-MAC ring: round-robin, desynchronisation, slot learning."""
import random

import pytest

from trafficmac.mac_upper import (
    LmacState,
    centralized_schedule,
    check_distribution,
    clustered_slots,
    desync_round,
    lmac_choose,
    lmac_update,
    maximally_spaced,
    ring_midpoint,
    run_until_converged,
    spread_slots,
)


def test_centralized_full_ring():
    schedule = centralized_schedule(range(4), 4)
    assert schedule.dm_slots == {0: 0, 1: 1, 2: 2, 3: 3}
    assert schedule.collision_free


def test_centralized_idle_slots():
    schedule = centralized_schedule(range(3), 5)
    assert schedule.owner_of(3) is None and schedule.owner_of(4) is None


def test_centralized_round_time_too_small():
    with pytest.raises(ValueError):
        centralized_schedule(range(4), 3)


def test_centralized_idempotent():
    first = centralized_schedule(range(2), 2)
    second = centralized_schedule(range(2), 2)
    assert first.dm_slots == second.dm_slots


def test_midpoint_wraparound_worked_example():
    # neighbours at 8 and 2 on a 10-slot ring: midpoint is 10, stored mod 10
    assert ring_midpoint(8, 2, 10) == 0
    assert ring_midpoint(8, 2, 10, own_slot=9) == 0


def test_midpoint_plain_cases():
    assert ring_midpoint(2, 6, 10, own_slot=4) == 4
    assert ring_midpoint(0, 4, 8, own_slot=2) == 2


def test_midpoint_two_nodes_full_circle():
    # both neighbours are the same node: the arc is the whole ring
    assert ring_midpoint(1, 1, 4) == 3
    assert ring_midpoint(0, 0, 2) == 1


def test_desync_maximally_spaced_fixed_point():
    slots = spread_slots(4, 4)
    rng = random.Random(0)
    for _ in range(100):
        before = dict(slots)
        desync_round(slots, 4, rng)
        assert slots == before


def test_desync_preserves_distinct_slots():
    rng = random.Random(12)
    for trial in range(50):
        slots = {dm: rng.randrange(12) for dm in range(5)}
        for _ in range(20):
            desync_round(slots, 12, rng)
            values = list(slots.values())
            assert len(set(values)) == len(values)


def test_desync_cluster_converges_with_slack():
    rng = random.Random(5)
    schedule, rounds = run_until_converged(
        "desync", 4, 8, rng, max_rounds=500, initial_slots=clustered_slots(4, 8))
    assert rounds is not None
    assert maximally_spaced(schedule.dm_slots, 8)


def test_desync_tight_ring_never_settles():
    rng = random.Random(6)
    schedule, rounds = run_until_converged(
        "desync", 4, 6, rng, max_rounds=500, initial_slots=clustered_slots(4, 6))
    assert rounds is None
    assert schedule.collision_free  # it keeps rotating, never colliding


def test_spacing_predicate():
    assert maximally_spaced({0: 0, 1: 2, 2: 4, 3: 6}, 8)
    assert maximally_spaced({0: 0, 1: 1, 2: 3, 3: 5}, 6)  # gaps 1,2,2,1
    assert not maximally_spaced({0: 0, 1: 1, 2: 2, 3: 3}, 8)  # gaps 1,1,1,5
    assert not maximally_spaced({0: 0, 1: 0, 2: 3, 3: 5}, 8)  # collision


def test_lmac_uniform_initialisation():
    state = LmacState.uniform(0, 4)
    assert state.prob == [0.25] * 4
    assert state.locked is None


def test_lmac_locked_choice_is_deterministic():
    state = LmacState(0, [0.25] * 4, locked=3)
    rng = random.Random(1)
    assert all(lmac_choose(state, rng) == 3 for _ in range(20))


def test_lmac_one_hot_draw():
    state = LmacState(0, [1.0, 0.0, 0.0, 0.0])
    rng = random.Random(2)
    assert all(lmac_choose(state, rng) == 0 for _ in range(20))


def test_lmac_uniform_draw_frequencies():
    state = LmacState.uniform(0, 4)
    rng = random.Random(3)
    counts = [0] * 4
    n = 10_000
    for _ in range(n):
        counts[lmac_choose(state, rng)] += 1
    # chi-square against uniform, 3 dof; 16.27 is the 0.001 quantile
    chi2 = sum((c - n / 4) ** 2 / (n / 4) for c in counts)
    assert chi2 < 16.27


def test_lmac_success_locks_permanently():
    state = LmacState.uniform(0, 4)
    lmac_update(state, 2, collided=False)
    assert state.locked == 2
    assert state.prob == [0.0, 0.0, 1.0, 0.0]
    lmac_update(state, 2, collided=True)  # collisions no longer move it
    assert state.locked == 2
    assert state.prob == [0.0, 0.0, 1.0, 0.0]


def test_lmac_collision_halves_and_renormalises():
    state = LmacState.uniform(0, 4)
    lmac_update(state, 0, collided=True)
    expected = [1 / 7, 2 / 7, 2 / 7, 2 / 7]
    assert all(abs(p - e) < 1e-12 for p, e in zip(state.prob, expected))


def test_lmac_distribution_stays_valid_under_random_updates():
    rng = random.Random(8)
    state = LmacState.uniform(0, 6)
    for _ in range(500):
        slot = lmac_choose(state, rng)
        lmac_update(state, slot, collided=rng.random() < 0.7)
        check_distribution(state.prob)
        if state.locked is not None:
            break


def test_check_distribution_rejects_bad_vectors():
    with pytest.raises(ValueError):
        check_distribution([0.5, 0.6])
    with pytest.raises(ValueError):
        check_distribution([1.5, -0.5])


def test_lmac_converges_and_schedule_is_usable():
    for round_time in (4, 6):
        rng = random.Random(21)
        schedule, rounds = run_until_converged("lmac", 4, round_time, rng, 500)
        assert rounds is not None
        assert schedule.collision_free


def test_lmac_smoke_convergence_fraction():
    done = 0
    for s in range(100):
        rng = random.Random(1_000 + s)
        _schedule, rounds = run_until_converged("lmac", 4, 4, rng, 500)
        if rounds is not None and rounds <= 200:
            done += 1
    assert done >= 99


def test_history_rows_shape():
    rng = random.Random(4)
    history = []
    run_until_converged("lmac", 3, 4, rng, 500, history=history)
    assert history
    rounds = {row[0] for row in history}
    for rnd in rounds:
        dms = [row[1] for row in history if row[0] == rnd]
        assert sorted(dms) == [0, 1, 2]


def test_round_time_below_dm_count_rejected():
    with pytest.raises(ValueError):
        run_until_converged("lmac", 4, 3, random.Random(0))


def test_converged_schedule_yields_disjoint_windows():
    rng = random.Random(31)
    schedule, rounds = run_until_converged("lmac", 4, 4, rng, 500)
    assert rounds is not None
    owners = [schedule.owner_of(slot) for slot in range(4)]
    assert sorted(o for o in owners if o is not None) == [0, 1, 2, 3]
