"""Box-filter layouts approximating second-order Gaussian derivatives."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from wordsurf.errors import LayoutError


@dataclass(frozen=True)
class WeightedRect:
    """Rectangle with offsets relative to the filter centre and an integer weight."""

    x0: int
    y0: int
    x1: int
    y1: int
    weight: int

    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1

    def transposed(self) -> "WeightedRect":
        return WeightedRect(self.y0, self.x0, self.y1, self.x1, self.weight)


class HessianLayout(NamedTuple):
    dxx: tuple[WeightedRect, ...]
    dyy: tuple[WeightedRect, ...]
    dxy: tuple[WeightedRect, ...]

    @property
    def largest_box(self) -> tuple[int, int]:
        """(width, height) of the largest rectangle, in the Dxx orientation."""
        widest = max(self.dxx, key=lambda rect: rect.width * rect.height)
        return widest.width, widest.height


def hessian_layout(filter_size: int) -> HessianLayout:
    if filter_size < 9 or filter_size % 6 != 3:
        raise LayoutError(f"filter size {filter_size} is not an odd multiple of 3 starting at 9")
    lobe = filter_size // 3
    half = (filter_size - 1) // 2
    tall = lobe - 1

    dxx = (
        WeightedRect(-half, -tall, -half + lobe - 1, tall, 1),
        WeightedRect(-(lobe - 1) // 2, -tall, (lobe - 1) // 2, tall, -2),
        WeightedRect(half - lobe + 1, -tall, half, tall, 1),
    )
    dyy = tuple(rect.transposed() for rect in dxx)
    dxy = (
        WeightedRect(-lobe, -lobe, -1, -1, 1),
        WeightedRect(1, -lobe, lobe, -1, -1),
        WeightedRect(-lobe, 1, -1, lobe, -1),
        WeightedRect(1, 1, lobe, lobe, 1),
    )
    return HessianLayout(dxx=dxx, dyy=dyy, dxy=dxy)
