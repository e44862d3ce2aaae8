"""End-to-end detection over a reduced word-length integral image."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from wordsurf.errors import ConfigurationError
from wordsurf.image import GrayImage
from wordsurf.integral import ReducedIntegralImage, build_integral
from wordsurf.reduction import plan as plan_reduction
from wordsurf.schemas import ReductionConfig
from wordsurf.settings import settings
from wordsurf.wordlen import ReductionMethod, WordLengthPlan

from .extrema import InterestPoint, interpolate, nms_3d
from .layout import hessian_layout
from .response import ResponseMap, response_map
from .schedule import ScaleEntry, filter_schedule, octave_layers

logger = logging.getLogger(__name__)


@dataclass
class Detection:
    plan: WordLengthPlan
    schedule: list[ScaleEntry]
    integral: ReducedIntegralImage
    points: list[InterestPoint] = field(default_factory=list)
    candidates: int = 0
    rejected: int = 0


def point_sort_key(point: InterestPoint) -> tuple[float, float, float, float]:
    return (-point.response, point.y, point.x, point.scale)


def _check_box_bound(schedule: list[ScaleEntry], cfg: ReductionConfig) -> None:
    if cfg.method is ReductionMethod.FULL:
        return
    largest = max(entry.filter_size for entry in schedule)
    width, height = hessian_layout(largest).largest_box
    if width * height > cfg.max_filter_width * cfg.max_filter_height:
        raise ConfigurationError(
            f"filter {largest} evaluates {width}x{height} boxes, larger than the "
            f"{cfg.max_filter_width}x{cfg.max_filter_height} bound the word length was sized for"
        )


def run_detection(
    img: GrayImage,
    cfg: ReductionConfig,
    threshold: float | None = None,
    octaves: int | None = None,
    max_workers: int | None = None,
) -> Detection:
    threshold = settings.threshold if threshold is None else threshold
    octaves = settings.octaves if octaves is None else octaves
    max_workers = settings.max_workers if max_workers is None else max_workers

    schedule = filter_schedule(octaves, img.width, img.height)
    _check_box_bound(schedule, cfg)
    word_plan, prepared = plan_reduction(img, cfg)
    ii = build_integral(prepared, word_plan.integral_bits)

    # maps only read the shared integral image, so layers are independent
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        computed = list(pool.map(lambda entry: response_map(ii, word_plan, entry), schedule))
    maps: dict[ScaleEntry, ResponseMap] = dict(zip(schedule, computed))

    detection = Detection(plan=word_plan, schedule=schedule, integral=ii)
    for octave, entries in octave_layers(schedule).items():
        for index in range(1, len(entries) - 1):
            triple = (entries[index - 1], entries[index], entries[index + 1])
            candidates = nms_3d([maps[entry] for entry in triple], threshold)
            detection.candidates += len(candidates)
            for candidate in candidates:
                point = interpolate(candidate, triple)
                if point is None:
                    detection.rejected += 1
                    continue
                detection.points.append(point)
        logger.debug("octave %d done: %d points so far", octave, len(detection.points))

    detection.points.sort(key=point_sort_key)
    logger.debug(
        "%d candidates, %d rejected by interpolation, %d interest points",
        detection.candidates,
        detection.rejected,
        len(detection.points),
    )
    return detection


def detect(
    img: GrayImage,
    cfg: ReductionConfig,
    threshold: float | None = None,
    octaves: int | None = None,
) -> list[InterestPoint]:
    return run_detection(img, cfg, threshold=threshold, octaves=octaves).points
