"""Method-versus-method detector comparisons shaped like the accuracy tables."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from wordsurf.detector import InterestPoint, run_detection
from wordsurf.image import GrayImage
from wordsurf.schemas import ReductionConfig
from wordsurf.settings import settings

from .csv_io import to_csv, to_text

logger = logging.getLogger(__name__)


@dataclass
class ComparisonCell:
    image_id: str
    config: ReductionConfig
    integral_bits: Optional[int] = None
    points: list[InterestPoint] = field(default_factory=list)
    runtime_seconds: float = 0.0
    error: Optional[str] = None

    @property
    def count(self) -> Optional[int]:
        return None if self.error else len(self.points)

    @property
    def shift(self) -> int:
        return self.config.shift


@dataclass
class ComparisonReport:
    image_ids: list[str]
    configs: list[ReductionConfig]
    cells: dict[tuple[str, str], ComparisonCell]

    @property
    def baseline(self) -> ReductionConfig:
        return self.configs[0]

    def cell(self, image_id: str, config: ReductionConfig) -> ComparisonCell:
        return self.cells[(image_id, config.label)]

    @property
    def failed(self) -> list[ComparisonCell]:
        return [cell for cell in self.cells.values() if cell.error]

    def run_summary_rows(self) -> tuple[list[str], list[list[object]]]:
        """Rows per compared run (word length and shift), one column per image."""
        header = ["run", "method", "p", "L_ii", *self.image_ids]
        rows = []
        for config in self.configs[1:]:
            bits = {self.cell(image_id, config).integral_bits for image_id in self.image_ids}
            bits.discard(None)
            rows.append(
                [
                    config.label,
                    str(config.method),
                    config.shift,
                    "/".join(str(value) for value in sorted(bits)) or "error",
                    *[_count_text(self.cell(image_id, config)) for image_id in self.image_ids],
                ]
            )
        return header, rows

    def point_counts_rows(self) -> tuple[list[str], list[list[object]]]:
        """Per image and compared run: baseline count, run count, difference, same points."""
        header = ["image", "run", "baseline", "baseline_count", "count", "diff", "same_points"]
        rows = []
        for image_id in self.image_ids:
            base = self.cell(image_id, self.baseline)
            for config in self.configs[1:]:
                other = self.cell(image_id, config)
                comparable = base.error is None and other.error is None
                rows.append(
                    [
                        image_id,
                        config.label,
                        self.baseline.label,
                        _count_text(base),
                        _count_text(other),
                        other.count - base.count if comparable else "error",
                        ("yes" if base.points == other.points else "no") if comparable else "error",
                    ]
                )
        return header, rows

    def run_summary_csv(self) -> str:
        return to_csv(*self.run_summary_rows())

    def point_counts_csv(self) -> str:
        return to_csv(*self.point_counts_rows())

    def summary_text(self) -> str:
        header = ["image", "run", "L_ii", "p", "count", "runtime_s"]
        rows = []
        for image_id in self.image_ids:
            for config in self.configs:
                cell = self.cell(image_id, config)
                rows.append(
                    [
                        image_id,
                        config.label,
                        cell.integral_bits if cell.integral_bits is not None else "-",
                        cell.shift,
                        _count_text(cell),
                        f"{cell.runtime_seconds:.3f}",
                    ]
                )
        return to_text(header, rows)


def _count_text(cell: ComparisonCell) -> object:
    return "error" if cell.error else cell.count


def _run_cell(
    image_id: str,
    img: GrayImage,
    config: ReductionConfig,
    threshold: float,
    octaves: int,
) -> ComparisonCell:
    cell = ComparisonCell(image_id=image_id, config=config)
    started = time.perf_counter()
    try:
        # one thread per cell; compare_methods owns the pool
        detection = run_detection(img, config, threshold=threshold, octaves=octaves, max_workers=1)
    except Exception as exc:  # noqa: BLE001
        logger.warning("detection failed for %s with %s: %s", image_id, config.label, exc)
        cell.error = f"{type(exc).__name__}: {exc}"
    else:
        cell.integral_bits = detection.plan.integral_bits
        cell.points = detection.points
    cell.runtime_seconds = time.perf_counter() - started
    return cell


def compare_methods(
    images: Sequence[tuple[str, GrayImage]],
    configs: Sequence[ReductionConfig],
    threshold: float | None = None,
    octaves: int | None = None,
    max_workers: int | None = None,
) -> ComparisonReport:
    if not images:
        raise ValueError("comparison needs at least one image")
    if not configs:
        raise ValueError("comparison needs at least one run")
    if len({image_id for image_id, _ in images}) != len(images):
        raise ValueError("image identifiers must be unique")
    labels = [config.label for config in configs]
    if len(set(labels)) != len(labels):
        raise ValueError(f"comparison runs must be distinct, got {labels}")
    threshold = settings.threshold if threshold is None else threshold
    octaves = settings.octaves if octaves is None else octaves
    max_workers = settings.max_workers if max_workers is None else max_workers

    jobs = [(image_id, img, config) for image_id, img in images for config in configs]
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        results = list(
            pool.map(lambda job: _run_cell(job[0], job[1], job[2], threshold, octaves), jobs)
        )
    cells = {(cell.image_id, cell.config.label): cell for cell in results}
    return ComparisonReport(
        image_ids=[image_id for image_id, _ in images],
        configs=list(configs),
        cells=cells,
    )

