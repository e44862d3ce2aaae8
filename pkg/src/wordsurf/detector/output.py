"""Interest-point file formats."""

from __future__ import annotations

import csv
import io
from typing import Iterable

from .extrema import InterestPoint

POINT_FIELDS = ("x", "y", "scale", "response")


def _fields(point: InterestPoint) -> list[str]:
    return [f"{point.x:.6f}", f"{point.y:.6f}", f"{point.scale:.6f}", f"{point.response:.6f}"]


def points_to_text(points: Iterable[InterestPoint]) -> str:
    """One ``x y scale response`` line per point."""
    return "".join(" ".join(_fields(point)) + "\n" for point in points)


def points_to_csv(points: Iterable[InterestPoint]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(POINT_FIELDS)
    writer.writerows(_fields(point) for point in points)
    return buffer.getvalue()
