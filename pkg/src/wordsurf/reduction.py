"""Word-length reduction methods: plans, pixel preprocessing and box-sum recovery."""

from __future__ import annotations

import logging

import numpy as np

from .errors import ConfigurationError, InvalidShiftError, ScheduleError
from .image import GrayImage
from .schemas import ReductionConfig
from .wordlen import (
    MAX_INTEGRAL_BITS,
    ReductionMethod,
    WordLengthPlan,
    bits_exact,
    bits_for_value,
    bits_modified_exact,
    worst_case_integral_value,
)

logger = logging.getLogger(__name__)

# Box filters must leave room for one non-maximum suppression step.
NMS_MARGIN = 3


def integral_bits_for(
    method: ReductionMethod,
    width: int,
    height: int,
    pixel_bits: int,
    shift: int = 0,
    max_filter_width: int = 129,
    max_filter_height: int = 65,
) -> int:
    if method is ReductionMethod.FULL:
        return bits_for_value(worst_case_integral_value(width, height, pixel_bits))
    if method is ReductionMethod.EXACT:
        return bits_exact(max_filter_width, max_filter_height, pixel_bits)
    if method is ReductionMethod.MODIFIED_EXACT:
        return bits_modified_exact(max_filter_width, max_filter_height, pixel_bits)
    if method is ReductionMethod.APPROXIMATE:
        return bits_exact(max_filter_width, max_filter_height, pixel_bits - shift)
    return bits_modified_exact(max_filter_width, max_filter_height, pixel_bits - shift)


def _check_shift(img: GrayImage, shift: int) -> None:
    if not 1 <= shift <= img.bits_per_pixel - 1:
        raise InvalidShiftError(
            f"shift must be in [1, {img.bits_per_pixel - 1}] for {img.bits_per_pixel}-bit pixels, got {shift}"
        )


def even_preprocess(img: GrayImage, shift: int) -> GrayImage:
    """Clear every pixel's least significant bit, then drop ``shift`` low bits."""
    _check_shift(img, shift)
    evened = img.pixels - (img.pixels & 1)
    return GrayImage.from_array(evened >> shift, bits_per_pixel=img.bits_per_pixel - shift)


def approximate_preprocess(img: GrayImage, shift: int) -> GrayImage:
    """Drop ``shift`` low bits, carrying each pixel's remainder to the next in raster order.

    Output pixels saturate at the reduced maximum; any excess stays in the carry,
    so the shifted-back total plus the final carry equals the input total.
    """
    _check_shift(img, shift)
    ceiling = (1 << (img.bits_per_pixel - shift)) - 1
    carry = 0
    out = []
    for value in img.pixels.ravel().tolist():
        total = value + carry
        quantum = min(total >> shift, ceiling)
        carry = total - (quantum << shift)
        out.append(quantum)
    shifted = np.asarray(out, dtype=np.int64).reshape(img.height, img.width)
    return GrayImage.from_array(shifted, bits_per_pixel=img.bits_per_pixel - shift)


def recover_box_value(raw, plan: WordLengthPlan):
    """Undo the Even Image pixel shift on an extracted box sum (scalar or array)."""
    if plan.post_shift:
        return raw << plan.post_shift
    return raw


def _check_fits(img: GrayImage, cfg: ReductionConfig) -> None:
    if img.width < cfg.max_filter_width + NMS_MARGIN or img.height < cfg.max_filter_height + NMS_MARGIN:
        raise ScheduleError(
            f"{img.width}x{img.height} image is smaller than the "
            f"{cfg.max_filter_width}x{cfg.max_filter_height} box bound plus {NMS_MARGIN} samples"
        )


def plan(img: GrayImage, cfg: ReductionConfig) -> tuple[WordLengthPlan, GrayImage]:
    method = cfg.method
    shift = cfg.shift if method.shifts_pixels else 0
    if method.shifts_pixels:
        _check_shift(img, shift)
    if method is not ReductionMethod.FULL:
        _check_fits(img, cfg)

    bits = integral_bits_for(
        method,
        img.width,
        img.height,
        img.bits_per_pixel,
        shift,
        cfg.max_filter_width,
        cfg.max_filter_height,
    )
    if method is ReductionMethod.APPROXIMATE:
        prepared = approximate_preprocess(img, shift)
    elif method is ReductionMethod.EVEN_IMAGE:
        prepared = even_preprocess(img, shift)
    else:
        prepared = img

    if cfg.integral_bits is not None and cfg.integral_bits != bits:
        if cfg.integral_bits < prepared.bits_per_pixel or cfg.integral_bits > MAX_INTEGRAL_BITS:
            raise ConfigurationError(
                f"--bits {cfg.integral_bits} cannot hold a {prepared.bits_per_pixel}-bit pixel"
            )
        if cfg.integral_bits < bits:
            logger.warning(
                "L_ii forced to %d bits, below the %d-bit bound of method %s: box sums may wrap",
                cfg.integral_bits,
                bits,
                method,
            )
        bits = cfg.integral_bits

    word_plan = WordLengthPlan(
        method=method,
        integral_bits=bits,
        pre_shift=shift,
        post_shift=shift if method is ReductionMethod.EVEN_IMAGE else 0,
        effective_pixel_bits=img.bits_per_pixel - shift,
        compensate_shift=cfg.compensate_shift,
    )
    logger.info("method %s: L_ii=%d, shift=%d", method, bits, shift)
    return word_plan, prepared
