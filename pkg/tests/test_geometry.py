"""Grid layout: corridors, stop lines, sensors and entries."""
import pytest

from trafficmac.geometry import BLOCK, DELTA, GridLayout, chebyshev, step_pos


@pytest.mark.parametrize("n,sensors,lights,entries", [(1, 20, 4, 4), (2, 40, 8, 6), (4, 80, 16, 8)])
def test_layout_counts(n, sensors, lights, entries):
    layout = GridLayout(n)
    assert len(layout.sensors) == sensors
    assert len(layout.stop_lines) == lights
    assert len(layout.entries) == entries


def test_unsupported_intersection_count():
    with pytest.raises(ValueError):
        GridLayout(3)


def test_single_intersection_dimensions():
    layout = GridLayout(1)
    assert layout.width == BLOCK and layout.height == BLOCK
    assert GridLayout(2).width == 2 * BLOCK and GridLayout(2).height == BLOCK
    assert GridLayout(4).width == 2 * BLOCK and GridLayout(4).height == 2 * BLOCK


def test_sensors_watch_road_cells_of_their_heading():
    layout = GridLayout(4)
    for site in layout.sensors:
        headings = layout.lane_headings[site.cell]
        assert site.heading in headings


def test_five_watched_cells_end_at_stop_line():
    layout = GridLayout(2)
    by_approach = {}
    for site in layout.sensors:
        by_approach.setdefault((site.intersection, site.heading), []).append(site.cell)
    assert len(by_approach) == 8
    for (inter, heading), cells in by_approach.items():
        assert len(cells) == 5
        # consecutive cells along the approach, the stop line first
        stop = cells[0]
        assert layout.stop_lines[stop] == (heading, inter)
        dx, dy = DELTA[heading]
        for j, cell in enumerate(cells):
            assert cell == (stop[0] - j * dx, stop[1] - j * dy)


def test_stop_lines_adjacent_to_crossing():
    layout = GridLayout(1)
    for stop, (heading, _inter) in layout.stop_lines.items():
        nxt = step_pos(stop, heading)
        # the cell past a stop line belongs to both corridors
        assert len(layout.lane_headings[nxt]) == 2


def test_entries_are_inbound_edge_cells():
    layout = GridLayout(1)
    assert set(layout.entries) == {
        ((5, 0), "N"), ((6, 11), "S"), ((0, 6), "E"), ((11, 5), "W"),
    }


def test_corridors_run_straight_to_the_far_edge():
    layout = GridLayout(2)
    for pos, heading in layout.entries:
        cell = pos
        while layout.in_bounds(cell):
            assert heading in layout.lane_headings[cell]
            cell = step_pos(cell, heading)


def test_chebyshev_distance():
    assert chebyshev((0, 0), (1, 1)) == 1
    assert chebyshev((2, 5), (7, 3)) == 5
    assert chebyshev((4, 4), (4, 4)) == 0
