"""Hessian-determinant response maps computed from a reduced integral image."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from wordsurf.errors import IntegralValidationError
from wordsurf.integral import ReducedIntegralImage, box_sum_grid
from wordsurf.reduction import recover_box_value
from wordsurf.wordlen import WordLengthPlan

from .layout import WeightedRect, hessian_layout
from .schedule import BASE_FILTER_SIZE, ScaleEntry

DXY_WEIGHT = 0.9


@dataclass(frozen=True, eq=False)
class ResponseMap:
    """Responses of one scale entry at ``margin + k * stride`` pixel positions."""

    entry: ScaleEntry
    grid: np.ndarray = field(repr=False)
    margin: int

    @property
    def stride(self) -> int:
        return self.entry.stride

    @property
    def xs(self) -> np.ndarray:
        return self.margin + self.stride * np.arange(self.grid.shape[1])

    @property
    def ys(self) -> np.ndarray:
        return self.margin + self.stride * np.arange(self.grid.shape[0])


def sample_positions(extent: int, entry: ScaleEntry) -> np.ndarray:
    count = max(0, (extent - 2 * entry.margin) // entry.stride)
    return entry.margin + entry.stride * np.arange(count)


def normalization(entry: ScaleEntry, plan: WordLengthPlan) -> float:
    """Area normalization relative to the 9x9 base mask, times the method's gain."""
    return plan.response_gain * (BASE_FILTER_SIZE / entry.filter_size) ** 2


def _weighted_sum(
    ii: ReducedIntegralImage,
    plan: WordLengthPlan,
    rects: tuple[WeightedRect, ...],
    xs: np.ndarray,
    ys: np.ndarray,
) -> np.ndarray:
    total = np.zeros((ys.size, xs.size), dtype=np.int64)
    for rect in rects:
        raw = box_sum_grid(ii, xs + rect.x0, ys + rect.y0, xs + rect.x1, ys + rect.y1)
        total += rect.weight * recover_box_value(raw, plan).astype(np.int64)
    return total


def hessian_determinant(dxx: np.ndarray, dyy: np.ndarray, dxy: np.ndarray, scale: float) -> np.ndarray:
    dxx = dxx * scale
    dyy = dyy * scale
    dxy = dxy * scale
    return dxx * dyy - (DXY_WEIGHT * dxy) ** 2


def response_map(ii: ReducedIntegralImage, plan: WordLengthPlan, entry: ScaleEntry) -> ResponseMap:
    if ii.integral_bits != plan.integral_bits:
        raise IntegralValidationError(
            f"integral image has L_ii={ii.integral_bits} but the plan requires {plan.integral_bits}"
        )
    layout = hessian_layout(entry.filter_size)
    xs = sample_positions(ii.width, entry)
    ys = sample_positions(ii.height, entry)
    dxx = _weighted_sum(ii, plan, layout.dxx, xs, ys)
    dyy = _weighted_sum(ii, plan, layout.dyy, xs, ys)
    dxy = _weighted_sum(ii, plan, layout.dxy, xs, ys)
    grid = hessian_determinant(dxx, dyy, dxy, normalization(entry, plan))
    grid.setflags(write=False)
    return ResponseMap(entry=entry, grid=grid, margin=entry.margin)
