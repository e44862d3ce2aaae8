"""3-D non-maximum suppression and quadratic localization of scale-space maxima."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from wordsurf.errors import ArityError, ScaleSpaceError

from .response import ResponseMap
from .schedule import ScaleEntry

SINGULAR_DETERMINANT = 1e-12
MAX_OFFSET = 0.5

_NEIGHBOR_OFFSETS = [
    offset for offset in itertools.product(range(3), repeat=3) if offset != (1, 1, 1)
]


@dataclass(frozen=True, eq=False)
class Candidate:
    """A strict local maximum of the middle layer, with its 3x3x3 neighborhood.

    ``neighborhood`` is indexed ``[scale, y, x]`` with the candidate at ``[1, 1, 1]``.
    """

    x: int
    y: int
    response: float
    neighborhood: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class InterestPoint:
    x: float
    y: float
    scale: float
    response: float


def _common_axis(maps: Sequence[ResponseMap], axis: int, stride: int) -> tuple[int, int]:
    """First candidate pixel position and candidate count along one axis."""
    if any(m.grid.shape[axis] == 0 for m in maps):
        return 0, 0
    starts = [m.margin for m in maps]
    ends = [m.margin + stride * (m.grid.shape[axis] - 1) for m in maps]
    low = max(starts) + stride
    high = min(ends) - stride
    if high < low:
        return low, 0
    return low, (high - low) // stride + 1


def _window(m: ResponseMap, x_start: int, y_start: int, nx: int, ny: int) -> np.ndarray:
    col = (x_start - m.margin) // m.stride
    row = (y_start - m.margin) // m.stride
    return m.grid[row : row + ny, col : col + nx]


def nms_3d(maps: Sequence[ResponseMap], threshold: float) -> list[Candidate]:
    if len(maps) != 3:
        raise ArityError(f"non-maximum suppression needs exactly 3 layers, got {len(maps)}")
    stride = maps[1].stride
    if any(m.stride != stride for m in maps):
        raise ScaleSpaceError("response maps do not share a sampling stride")
    if any((m.margin - maps[1].margin) % stride for m in maps):
        raise ScaleSpaceError("response maps are not sampled on a common lattice")

    x_low, nx = _common_axis(maps, 1, stride)
    y_low, ny = _common_axis(maps, 0, stride)
    if nx == 0 or ny == 0:
        return []

    # volume covers one extra sample on each side of the candidate area
    volume = np.stack(
        [_window(m, x_low - stride, y_low - stride, nx + 2, ny + 2) for m in maps]
    )
    center = volume[1, 1:-1, 1:-1]
    keep = center > threshold
    for ds, dy, dx in _NEIGHBOR_OFFSETS:
        keep &= center > volume[ds, dy : dy + ny, dx : dx + nx]

    candidates = []
    for row, col in np.argwhere(keep):
        candidates.append(
            Candidate(
                x=x_low + stride * int(col),
                y=y_low + stride * int(row),
                response=float(center[row, col]),
                neighborhood=volume[:, row : row + 3, col : col + 3].copy(),
            )
        )
    return candidates


def _derivatives(cube: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    value = cube[1, 1, 1]
    dx = (cube[1, 1, 2] - cube[1, 1, 0]) / 2.0
    dy = (cube[1, 2, 1] - cube[1, 0, 1]) / 2.0
    ds = (cube[2, 1, 1] - cube[0, 1, 1]) / 2.0
    dxx = cube[1, 1, 2] - 2.0 * value + cube[1, 1, 0]
    dyy = cube[1, 2, 1] - 2.0 * value + cube[1, 0, 1]
    dss = cube[2, 1, 1] - 2.0 * value + cube[0, 1, 1]
    dxy = (cube[1, 2, 2] - cube[1, 2, 0] - cube[1, 0, 2] + cube[1, 0, 0]) / 4.0
    dxs = (cube[2, 1, 2] - cube[2, 1, 0] - cube[0, 1, 2] + cube[0, 1, 0]) / 4.0
    dys = (cube[2, 2, 1] - cube[2, 0, 1] - cube[0, 2, 1] + cube[0, 0, 1]) / 4.0
    gradient = np.array([dx, dy, ds])
    hessian = np.array(
        [
            [dxx, dxy, dxs],
            [dxy, dyy, dys],
            [dxs, dys, dss],
        ]
    )
    return gradient, hessian


def quadratic_offset(cube: np.ndarray) -> np.ndarray | None:
    """Vertex of the quadratic through the 3x3x3 cube, as (x, y, scale) sample offsets."""
    gradient, hessian = _derivatives(np.asarray(cube, dtype=np.float64))
    if abs(np.linalg.det(hessian)) < SINGULAR_DETERMINANT:
        return None
    return -np.linalg.solve(hessian, gradient)


def interpolate(
    candidate: Candidate,
    entries: tuple[ScaleEntry, ScaleEntry, ScaleEntry],
) -> InterestPoint | None:
    offset = quadratic_offset(candidate.neighborhood)
    if offset is None or np.any(np.abs(offset) > MAX_OFFSET):
        return None
    below, middle, above = entries
    stride = middle.stride
    ox, oy, os_ = (float(v) for v in offset)
    if os_ >= 0:
        scale = middle.scale + os_ * (above.scale - middle.scale)
    else:
        scale = middle.scale + os_ * (middle.scale - below.scale)
    return InterestPoint(
        x=candidate.x + ox * stride,
        y=candidate.y + oy * stride,
        scale=scale,
        response=candidate.response,
    )
