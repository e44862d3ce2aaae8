"""Integral images stored at a reduced word length with wraparound arithmetic.

Entries are residues modulo ``2**L_ii``. Rectangle sums extracted through the
same modulus equal the true pixel sum whenever that sum fits in ``L_ii`` bits.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import IntegralConfigError, IntegralValidationError
from .image import GrayImage, Rect
from .wordlen import MAX_INTEGRAL_BITS, container_bits

_CONTAINER_DTYPES = {8: np.uint8, 16: np.uint16, 32: np.uint32, 64: np.uint64}


def _mask(bits: int) -> int:
    return (1 << bits) - 1


@dataclass(frozen=True, eq=False)
class ReducedIntegralImage:
    width: int
    height: int
    integral_bits: int
    values: np.ndarray = field(repr=False)

    @property
    def mask(self) -> int:
        return _mask(self.integral_bits)

    @property
    def capacity(self) -> int:
        """Largest box sum that extracts without loss."""
        return self.mask

    def entry(self, x: int, y: int) -> int:
        """Integral value at ``(x, y)``; the border row and column at -1 read as zero."""
        if x < 0 or y < 0:
            return 0
        return int(self.values[y, x])

    @cached_property
    def padded(self) -> np.ndarray:
        """uint64 copy with a leading zero row and column, so index -1 becomes 0."""
        table = np.zeros((self.height + 1, self.width + 1), dtype=np.uint64)
        table[1:, 1:] = self.values
        table.setflags(write=False)
        return table


class BoxSumCheck(NamedTuple):
    value: int
    overflowed: bool


def build_integral(img: GrayImage, integral_bits: int) -> ReducedIntegralImage:
    if integral_bits < img.bits_per_pixel:
        raise IntegralConfigError(
            f"L_ii={integral_bits} cannot represent a single {img.bits_per_pixel}-bit pixel"
        )
    if integral_bits > MAX_INTEGRAL_BITS:
        raise IntegralConfigError(f"L_ii={integral_bits} exceeds {MAX_INTEGRAL_BITS} bits")

    # uint64 accumulation wraps modulo 2**64, which is congruent modulo 2**L_ii
    table = np.cumsum(img.pixels, axis=0, dtype=np.uint64)
    np.cumsum(table, axis=1, out=table)
    table &= np.uint64(_mask(integral_bits))
    values = table.astype(_CONTAINER_DTYPES[container_bits(integral_bits)])
    values.setflags(write=False)
    return ReducedIntegralImage(
        width=img.width,
        height=img.height,
        integral_bits=integral_bits,
        values=values,
    )


def box_sum(ii: ReducedIntegralImage, rect: Rect) -> int:
    rect.check_within(ii.width, ii.height)
    total = (
        ii.entry(rect.x1, rect.y1)
        - ii.entry(rect.x1, rect.y0 - 1)
        - ii.entry(rect.x0 - 1, rect.y1)
        + ii.entry(rect.x0 - 1, rect.y0 - 1)
    )
    return total & ii.mask


def box_sum_grid(
    ii: ReducedIntegralImage,
    x0: np.ndarray,
    y0: np.ndarray,
    x1: np.ndarray,
    y1: np.ndarray,
) -> np.ndarray:
    """Box sums for every (row, column) pairing of the given rectangle edges.

    ``x0``/``x1`` index columns and ``y0``/``y1`` rows; the result has shape
    ``(len(y0), len(x0))`` and holds uint64 residues modulo ``2**L_ii``.
    """
    table = ii.padded
    rows_top = np.asarray(y0)
    rows_bottom = np.asarray(y1) + 1
    cols_left = np.asarray(x0)
    cols_right = np.asarray(x1) + 1
    total = table[np.ix_(rows_bottom, cols_right)] - table[np.ix_(rows_top, cols_right)]
    total -= table[np.ix_(rows_bottom, cols_left)]
    total += table[np.ix_(rows_top, cols_left)]
    total &= np.uint64(ii.mask)
    return total


def box_sum_checked(img: GrayImage, ii: ReducedIntegralImage, rect: Rect) -> BoxSumCheck:
    """Box sum plus an overflow flag computed against a full-precision shadow."""
    if (img.width, img.height) != (ii.width, ii.height):
        raise IntegralValidationError(
            f"image is {img.width}x{img.height} but integral image is {ii.width}x{ii.height}"
        )
    value = box_sum(ii, rect)
    shadow = img.exact_integral

    def at(x: int, y: int) -> int:
        return 0 if x < 0 or y < 0 else int(shadow[y, x])

    true_sum = (
        at(rect.x1, rect.y1)
        - at(rect.x1, rect.y0 - 1)
        - at(rect.x0 - 1, rect.y1)
        + at(rect.x0 - 1, rect.y0 - 1)
    )
    overflowed = true_sum > ii.capacity
    if not overflowed and value != true_sum:
        raise IntegralValidationError(
            f"wrapped sum {value} differs from true sum {true_sum} for {rect} "
            "although it fits the word length"
        )
    return BoxSumCheck(value=value, overflowed=overflowed)


def integral_to_csv(ii: ReducedIntegralImage) -> str:
    """One CSV row per raster row of decimal residues."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(ii.values.tolist())
    return buffer.getvalue()
