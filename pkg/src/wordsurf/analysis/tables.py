"""Word-length sizing and storage-reduction tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from wordsurf.reduction import integral_bits_for
from wordsurf.wordlen import (
    ReductionMethod,
    bits_for_value,
    container_bytes,
    memory_bytes,
    worst_case_integral_value,
)

from .csv_io import percent, to_csv, to_text

TABLE_METHODS = (ReductionMethod.EXACT, ReductionMethod.MODIFIED_EXACT, ReductionMethod.EVEN_IMAGE)

SIZING_HEADER = (
    "width",
    "height",
    "pixel_bits",
    "integral_bits",
    "image_kb",
    "integral_kb",
    "integral_container_kb",
    "increase_percent",
)
REDUCTION_HEADER = (
    "width",
    "height",
    "method",
    "shift",
    "full_bits",
    "reduced_bits",
    "full_kb",
    "reduced_kb",
    "reduced_container_kb",
    "reduction_percent",
)


def _kb(value: Fraction | int) -> str:
    return f"{float(Fraction(value) / 1024):.2f}"


@dataclass(frozen=True)
class SizingRow:
    width: int
    height: int
    pixel_bits: int
    integral_bits: int
    image_bytes: Fraction
    integral_bytes: Fraction
    container_bytes: int

    @property
    def increase_percent(self) -> float:
        return float((self.integral_bytes - self.image_bytes) / self.image_bytes * 100)

    def cells(self) -> list[object]:
        return [
            self.width,
            self.height,
            self.pixel_bits,
            self.integral_bits,
            _kb(self.image_bytes),
            _kb(self.integral_bytes),
            _kb(self.container_bytes),
            percent(self.increase_percent),
        ]


@dataclass(frozen=True)
class ReductionRow:
    width: int
    height: int
    method: ReductionMethod
    shift: int
    full_bits: int
    reduced_bits: int
    container_bytes: int

    @property
    def reduction_percent(self) -> float:
        return (self.full_bits - self.reduced_bits) / self.full_bits * 100

    @property
    def memory_reduction_percent(self) -> float:
        full = memory_bytes(self.width, self.height, self.full_bits)
        reduced = memory_bytes(self.width, self.height, self.reduced_bits)
        return float((full - reduced) / full * 100)

    def cells(self) -> list[object]:
        return [
            self.width,
            self.height,
            str(self.method),
            self.shift,
            self.full_bits,
            self.reduced_bits,
            _kb(memory_bytes(self.width, self.height, self.full_bits)),
            _kb(memory_bytes(self.width, self.height, self.reduced_bits)),
            _kb(self.container_bytes),
            percent(self.reduction_percent),
        ]


def sizing_table(sizes: Sequence[tuple[int, int]], pixel_bits: int = 8) -> list[SizingRow]:
    if not sizes:
        raise ValueError("sizing table needs at least one image size")
    rows = []
    for width, height in sizes:
        bits = bits_for_value(worst_case_integral_value(width, height, pixel_bits))
        rows.append(
            SizingRow(
                width=width,
                height=height,
                pixel_bits=pixel_bits,
                integral_bits=bits,
                image_bytes=memory_bytes(width, height, pixel_bits),
                integral_bytes=memory_bytes(width, height, bits),
                container_bytes=container_bytes(width, height, bits),
            )
        )
    return rows


def reduction_table(
    sizes: Sequence[tuple[int, int]],
    method: ReductionMethod,
    shift: int = 0,
    pixel_bits: int = 8,
    max_filter: tuple[int, int] = (129, 65),
) -> list[ReductionRow]:
    if method not in TABLE_METHODS:
        raise ValueError(f"reduction tables cover {', '.join(map(str, TABLE_METHODS))}, not {method}")
    if method is ReductionMethod.EVEN_IMAGE and not 1 <= shift < pixel_bits:
        raise ValueError(f"even image tables need a shift in [1, {pixel_bits - 1}], got {shift}")
    if method is not ReductionMethod.EVEN_IMAGE:
        shift = 0
    rows = []
    for width, height in sizes:
        full_bits = integral_bits_for(ReductionMethod.FULL, width, height, pixel_bits)
        method_bits = integral_bits_for(method, width, height, pixel_bits, shift, *max_filter)
        # an image smaller than the box bound never needs more than its full word length
        reduced_bits = min(full_bits, method_bits)
        rows.append(
            ReductionRow(
                width=width,
                height=height,
                method=method,
                shift=shift,
                full_bits=full_bits,
                reduced_bits=reduced_bits,
                container_bytes=container_bytes(width, height, reduced_bits),
            )
        )
    return rows


def sizing_csv(rows: Sequence[SizingRow]) -> str:
    return to_csv(SIZING_HEADER, [row.cells() for row in rows])


def sizing_text(rows: Sequence[SizingRow]) -> str:
    return to_text(SIZING_HEADER, [row.cells() for row in rows])


def reduction_csv(rows: Sequence[ReductionRow]) -> str:
    return to_csv(REDUCTION_HEADER, [row.cells() for row in rows])


def reduction_text(rows: Sequence[ReductionRow]) -> str:
    return to_text(REDUCTION_HEADER, [row.cells() for row in rows])
