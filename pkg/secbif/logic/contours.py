"""
Marching-squares extraction of level curves on a regular grid.

Each grid cell is classified by which of its corners lie above the level. Crossing points are
linearly interpolated on the cell edges. Ambiguous saddle cells are split by the value at the
cell center. Segments sharing an edge are chained into polylines.
"""

from __future__ import annotations

import collections
import logging
import typing

import numpy as np

LOGGER = logging.getLogger(__name__)

# corners: 0 bottom-left, 1 bottom-right, 2 top-right, 3 top-left
# edges: 0 bottom, 1 right, 2 top, 3 left
SEGMENTS: dict[int, tuple[tuple[int, int], ...]] = {
    1: ((3, 0),),
    2: ((0, 1),),
    3: ((3, 1),),
    4: ((1, 2),),
    6: ((0, 2),),
    7: ((3, 2),),
    8: ((2, 3),),
    9: ((0, 2),),
    11: ((1, 2),),
    12: ((3, 1),),
    13: ((0, 1),),
    14: ((3, 0),),
}
SADDLE_SEGMENTS: dict[tuple[int, bool], tuple[tuple[int, int], ...]] = {
    (5, True): ((0, 1), (2, 3)),
    (5, False): ((3, 0), (1, 2)),
    (10, True): ((3, 0), (1, 2)),
    (10, False): ((0, 1), (2, 3)),
}

EdgeKey = tuple[str, int, int]


def _edge_key(row: int, column: int, edge: int) -> EdgeKey:
    return {
        0: ('h', row, column),
        1: ('v', row, column + 1),
        2: ('h', row + 1, column),
        3: ('v', row, column),
    }[edge]


def _crossing(key: EdgeKey, xs: np.ndarray, ys: np.ndarray, values: np.ndarray, level: float) -> tuple[float, float]:
    direction, row, column = key
    start = values[row, column]
    end = values[row, column + 1] if direction == 'h' else values[row + 1, column]
    fraction = 0.5 if end == start else (level - start) / (end - start)
    if direction == 'h':
        return float(xs[column] + fraction * (xs[column + 1] - xs[column])), float(ys[row])
    return float(xs[column]), float(ys[row] + fraction * (ys[row + 1] - ys[row]))


def _chain(adjacency: dict[EdgeKey, list[EdgeKey]]) -> list[tuple[list[EdgeKey], bool]]:
    visited: set[EdgeKey] = set()
    chains: list[tuple[list[EdgeKey], bool]] = []

    def _walk(start: EdgeKey) -> list[EdgeKey]:
        path = [start]
        visited.add(start)
        current = start
        while True:
            following = [neighbour for neighbour in adjacency[current] if neighbour not in visited]
            if not following:
                return path
            current = following[0]
            visited.add(current)
            path.append(current)

    for key, neighbours in sorted(adjacency.items()):
        if key not in visited and len(neighbours) == 1:
            chains.append((_walk(key), False))
    for key in sorted(adjacency):
        if key not in visited:
            path = _walk(key)
            chains.append((path, len(path) > 2 and path[0] in adjacency[path[-1]]))
    return chains


def marching_squares(
    xs: np.ndarray,
    ys: np.ndarray,
    values: np.ndarray,
    level: float,
    center: typing.Callable[[float, float], float] | None = None,
) -> list[tuple[np.ndarray, bool]]:
    """
    Level curves of a sampled function.

    Args:
        xs (np.ndarray): Ascending column coordinates.
        ys (np.ndarray): Ascending row coordinates.
        values (np.ndarray): Samples, values[row, column] taken at (xs[column], ys[row]).
        level (float): The level to extract.
        center (typing.Callable[[float, float], float] | None): Exact function used to split saddle cells,
            the mean of the corners when omitted.

    Returns:
        list[tuple[np.ndarray, bool]]: Polylines as (n, 2) arrays with their closed flag.
    """

    above = values > level
    cases = (
        above[:-1, :-1].astype(int)
        | above[:-1, 1:].astype(int) << 1
        | above[1:, 1:].astype(int) << 2
        | above[1:, :-1].astype(int) << 3
    )
    adjacency: dict[EdgeKey, list[EdgeKey]] = collections.defaultdict(list)
    for row, column in zip(*np.nonzero((cases != 0) & (cases != 15))):
        case = int(cases[row, column])
        if case in (5, 10):
            middle_x, middle_y = (xs[column] + xs[column + 1]) / 2, (ys[row] + ys[row + 1]) / 2
            middle = center(middle_x, middle_y) if center else values[row:row + 2, column:column + 2].mean()
            segments = SADDLE_SEGMENTS[(case, bool(middle > level))]
        else:
            segments = SEGMENTS[case]
        for first, second in segments:
            start, end = _edge_key(row, column, first), _edge_key(row, column, second)
            adjacency[start].append(end)
            adjacency[end].append(start)

    curves = []
    for path, closed in _chain(adjacency):
        points = np.array([_crossing(key, xs, ys, values, level) for key in path])
        curves.append((points, closed))
    LOGGER.debug(f'Level {level}: {len(curves)} curves from {len(adjacency)} edge crossings')
    return curves
