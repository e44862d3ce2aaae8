"""Closed-form integral image sizing: worst-case values, bit widths, footprints."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import StrEnum
from fractions import Fraction

from .errors import ConfigurationError

MAX_INTEGRAL_BITS = 64
_CONTAINER_BITS = (8, 16, 32, 64)

# Share of box pixels assumed at full and at half scale by the modified bound, in percent.
SATURATED_SHARE = 96
HALF_SCALE_SHARE = 4


class ReductionMethod(StrEnum):
    FULL = "full"
    EXACT = "exact"
    MODIFIED_EXACT = "modified-exact"
    APPROXIMATE = "approximate"
    EVEN_IMAGE = "even"

    @property
    def shifts_pixels(self) -> bool:
        return self in (ReductionMethod.APPROXIMATE, ReductionMethod.EVEN_IMAGE)


def _require_positive(**values: int) -> None:
    for name, value in values.items():
        if value < 1:
            raise ValueError(f"{name} must be >= 1, got {value}")


def worst_case_integral_value(width: int, height: int, pixel_bits: int) -> int:
    _require_positive(width=width, height=height, pixel_bits=pixel_bits)
    return ((1 << pixel_bits) - 1) * width * height


def bits_for_value(value: int) -> int:
    """Smallest ``L`` with ``2**L - 1 >= value``; at least one bit."""
    if value < 0:
        raise ValueError(f"value must be non-negative, got {value}")
    return max(1, int(value).bit_length())


def bits_exact(max_width: int, max_height: int, pixel_bits: int) -> int:
    _require_positive(max_width=max_width, max_height=max_height, pixel_bits=pixel_bits)
    return bits_for_value(((1 << pixel_bits) - 1) * max_width * max_height)


def bits_modified_exact(max_width: int, max_height: int, pixel_bits: int) -> int:
    """Word length when most box pixels are saturated and the rest sit at half scale.

    The bound is evaluated in hundredths so the percentage split stays exact.
    """
    _require_positive(max_width=max_width, max_height=max_height, pixel_bits=pixel_bits)
    area = max_width * max_height
    full_scale = (1 << pixel_bits) - 1
    half_scale = (1 << (pixel_bits - 1)) - 1
    bound_hundredths = area * (full_scale * SATURATED_SHARE + half_scale * HALF_SCALE_SHARE)
    # 100 * (2**L - 1) >= b  <=>  2**L - 1 >= ceil(b / 100)
    return bits_for_value(-(-bound_hundredths // 100))


def memory_bytes(width: int, height: int, integral_bits: int) -> Fraction:
    """Packed-bit footprint ``W * H * L_ii / 8``."""
    _require_positive(width=width, height=height, integral_bits=integral_bits)
    return Fraction(width * height * integral_bits, 8)


def memory_kilobytes(width: int, height: int, integral_bits: int) -> Fraction:
    return memory_bytes(width, height, integral_bits) / 1024


def container_bits(integral_bits: int) -> int:
    """Smallest standard unsigned word holding ``integral_bits`` bits."""
    for bits in _CONTAINER_BITS:
        if integral_bits <= bits:
            return bits
    raise ConfigurationError(f"integral word length {integral_bits} exceeds {MAX_INTEGRAL_BITS} bits")


def container_bytes(width: int, height: int, integral_bits: int) -> int:
    return width * height * container_bits(integral_bits) // 8


@dataclass(frozen=True)
class WordLengthPlan:
    """A reduction method together with the word lengths it implies."""

    method: ReductionMethod
    integral_bits: int
    pre_shift: int
    post_shift: int
    effective_pixel_bits: int
    compensate_shift: bool = True

    def __post_init__(self) -> None:
        if self.effective_pixel_bits < 1:
            raise ConfigurationError("effective pixel width must be at least one bit")
        if self.integral_bits < self.effective_pixel_bits:
            raise ConfigurationError(
                f"L_ii={self.integral_bits} cannot hold a {self.effective_pixel_bits}-bit pixel"
            )
        if self.integral_bits > MAX_INTEGRAL_BITS:
            raise ConfigurationError(f"L_ii={self.integral_bits} exceeds {MAX_INTEGRAL_BITS} bits")
        if self.pre_shift and not self.method.shifts_pixels:
            raise ConfigurationError(f"method {self.method} does not shift pixels")
        expected_post = self.pre_shift if self.method is ReductionMethod.EVEN_IMAGE else 0
        if self.post_shift != expected_post:
            raise ConfigurationError(
                f"post_shift must be {expected_post} for method {self.method}, got {self.post_shift}"
            )

    @property
    def response_gain(self) -> int:
        """Factor applied to each Hessian term to undo the Approximate method's pixel shift."""
        if self.method is ReductionMethod.APPROXIMATE and self.compensate_shift:
            return 1 << self.pre_shift
        return 1

    def with_integral_bits(self, integral_bits: int) -> "WordLengthPlan":
        return replace(self, integral_bits=integral_bits)
