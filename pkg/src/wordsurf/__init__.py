"""SURF detection over reduced word-length integral images."""

from .image import GrayImage, Rect, load_image, read_pgm, write_pgm
from .integral import ReducedIntegralImage, box_sum, build_integral
from .reduction import plan
from .schemas import ReductionConfig, RunConfig
from .wordlen import ReductionMethod, WordLengthPlan

__all__ = [
    "__version__",
    "GrayImage",
    "Rect",
    "ReducedIntegralImage",
    "ReductionConfig",
    "ReductionMethod",
    "RunConfig",
    "WordLengthPlan",
    "box_sum",
    "build_integral",
    "load_image",
    "plan",
    "read_pgm",
    "write_pgm",
]

__version__ = "0.1.0"
