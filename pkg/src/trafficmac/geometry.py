"""Road-grid geometry: corridors, stop lines, watched cells and spawn entries.

Each intersection occupies a 12x12 block with a two-cell-wide road crossing
at its centre, one lane per direction with left-hand driving: northbound
traffic uses the western column, eastbound traffic the northern row, and so
on.  Layouts tile blocks horizontally (two intersections) or two-by-two
(four intersections) with the corridors joined, so vehicles travel straight
through consecutive intersections.

Coordinates are (x, y) cell indices with x growing east and y growing north.
"""
from __future__ import annotations

from dataclasses import dataclass

BLOCK = 12
APPROACH_LEN = 5  # watched cells per approach, stop line included
SENSORS_PER_INTERSECTION = 4 * APPROACH_LEN

HEADINGS = ("N", "E", "S", "W")
DELTA = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}

BLOCK_ORIGINS = {
    1: ((0, 0),),
    2: ((0, 0), (BLOCK, 0)),
    4: ((0, 0), (BLOCK, 0), (0, BLOCK), (BLOCK, BLOCK)),
}


def step_pos(pos: tuple[int, int], heading: str) -> tuple[int, int]:
    dx, dy = DELTA[heading]
    return (pos[0] + dx, pos[1] + dy)


def chebyshev(a: tuple[int, int], b: tuple[int, int]) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


@dataclass(frozen=True)
class SensorSite:
    """A watched road cell belonging to one intersection approach."""

    sensor_id: int
    intersection: int
    heading: str
    cell: tuple[int, int]


class GridLayout:
    """Static geometry for a 1-, 2- or 4-intersection road grid."""

    def __init__(self, intersections: int):
        if intersections not in BLOCK_ORIGINS:
            raise ValueError(f"unsupported intersection count: {intersections}")
        self.intersections = intersections
        self.origins = BLOCK_ORIGINS[intersections]
        self.width = BLOCK * (2 if intersections >= 2 else 1)
        self.height = BLOCK * (2 if intersections == 4 else 1)

        # lane cells keyed by position; core (crossing) cells carry both headings
        self.lane_headings: dict[tuple[int, int], tuple[str, ...]] = {}
        self._build_corridors()

        # stop line position -> (approach heading, intersection id)
        self.stop_lines: dict[tuple[int, int], tuple[str, int]] = {}
        self.sensors: list[SensorSite] = []
        self._build_intersections()

        self.entries = self._build_entries()

    def _build_corridors(self) -> None:
        xs = sorted({bx for bx, _ in self.origins})
        ys = sorted({by for _, by in self.origins})
        vertical = [(bx + 5, "N") for bx in xs] + [(bx + 6, "S") for bx in xs]
        horizontal = [(by + 5, "W") for by in ys] + [(by + 6, "E") for by in ys]
        for x, heading in vertical:
            for y in range(self.height):
                self.lane_headings[(x, y)] = (heading,)
        for y, heading in horizontal:
            for x in range(self.width):
                pos = (x, y)
                prior = self.lane_headings.get(pos)
                # a cell on both a vertical and a horizontal corridor is a
                # crossing cell traversed by either stream
                self.lane_headings[pos] = prior + (heading,) if prior else (heading,)

    def _build_intersections(self) -> None:
        sensor_id = 0
        for index, (bx, by) in enumerate(self.origins):
            stops = {
                "N": (bx + 5, by + 4),
                "E": (bx + 4, by + 6),
                "S": (bx + 6, by + 7),
                "W": (bx + 7, by + 5),
            }
            for heading in HEADINGS:
                stop = stops[heading]
                self.stop_lines[stop] = (heading, index)
                dx, dy = DELTA[heading]
                for back in range(APPROACH_LEN):
                    cell = (stop[0] - back * dx, stop[1] - back * dy)
                    self.sensors.append(SensorSite(sensor_id, index, heading, cell))
                    sensor_id += 1

    def _build_entries(self) -> list[tuple[tuple[int, int], str]]:
        entries = []
        for pos in sorted(self.lane_headings):
            headings = self.lane_headings[pos]
            if len(headings) != 1:
                continue
            heading = headings[0]
            x, y = pos
            if (heading == "N" and y == 0) or (heading == "S" and y == self.height - 1) \
                    or (heading == "E" and x == 0) or (heading == "W" and x == self.width - 1):
                entries.append((pos, heading))
        return entries

    def in_bounds(self, pos: tuple[int, int]) -> bool:
        return 0 <= pos[0] < self.width and 0 <= pos[1] < self.height

    def is_road(self, pos: tuple[int, int]) -> bool:
        return pos in self.lane_headings
