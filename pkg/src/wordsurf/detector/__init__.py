from .extrema import Candidate, InterestPoint, interpolate, nms_3d
from .layout import HessianLayout, WeightedRect, hessian_layout
from .output import points_to_csv, points_to_text
from .pipeline import Detection, detect, run_detection
from .response import ResponseMap, response_map
from .schedule import ScaleEntry, filter_schedule

__all__ = [
    "Candidate",
    "Detection",
    "HessianLayout",
    "InterestPoint",
    "ResponseMap",
    "ScaleEntry",
    "WeightedRect",
    "detect",
    "filter_schedule",
    "hessian_layout",
    "interpolate",
    "nms_3d",
    "points_to_csv",
    "points_to_text",
    "response_map",
    "run_detection",
]
