"""Scale-space filter ladder."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from wordsurf.errors import ScheduleError

logger = logging.getLogger(__name__)

BASE_FILTER_SIZE = 9
BASE_SCALE = 1.2
MAX_OCTAVES = 4
MIN_LAYERS_PER_OCTAVE = 3
# Filters stop three samples short of the image so one suppression step fits.
BORDER_SAMPLES = 3

OCTAVE_FILTER_SIZES: dict[int, tuple[int, ...]] = {
    1: (9, 15, 21, 27),
    2: (15, 27, 39, 51),
    3: (27, 51, 75, 99),
    4: (51, 99, 147, 195),
}


@dataclass(frozen=True)
class ScaleEntry:
    """One response layer: a square filter size sampled every ``stride`` pixels."""

    octave: int
    filter_size: int

    def __post_init__(self) -> None:
        if self.filter_size < BASE_FILTER_SIZE or self.filter_size % 6 != 3:
            raise ScheduleError(f"filter size {self.filter_size} is not 3 (mod 6)")
        if self.octave < 1:
            raise ScheduleError(f"octave index must be >= 1, got {self.octave}")

    @property
    def scale(self) -> float:
        return BASE_SCALE * self.filter_size / BASE_FILTER_SIZE

    @property
    def stride(self) -> int:
        return 1 << (self.octave - 1)

    @property
    def lobe(self) -> int:
        return self.filter_size // 3

    @property
    def margin(self) -> int:
        return (self.filter_size + 1) // 2


def filter_schedule(octaves: int, width: int, height: int) -> list[ScaleEntry]:
    if not 1 <= octaves <= MAX_OCTAVES:
        raise ScheduleError(f"octaves must be in [1, {MAX_OCTAVES}], got {octaves}")
    limit = min(width, height) - BORDER_SAMPLES
    if limit < BASE_FILTER_SIZE:
        raise ScheduleError(f"{width}x{height} image is too small for a {BASE_FILTER_SIZE}x{BASE_FILTER_SIZE} filter")

    schedule: list[ScaleEntry] = []
    for octave in range(1, octaves + 1):
        sizes = [size for size in OCTAVE_FILTER_SIZES[octave] if size <= limit]
        if len(sizes) < MIN_LAYERS_PER_OCTAVE:
            logger.debug("dropping octave %d: only %d filter sizes fit %dx%d", octave, len(sizes), width, height)
            continue
        schedule.extend(ScaleEntry(octave=octave, filter_size=size) for size in sizes)
    if not schedule:
        raise ScheduleError(f"no octave fits a {width}x{height} image")
    return schedule


def octave_layers(schedule: list[ScaleEntry]) -> dict[int, list[ScaleEntry]]:
    layers: dict[int, list[ScaleEntry]] = {}
    for entry in schedule:
        layers.setdefault(entry.octave, []).append(entry)
    return layers
