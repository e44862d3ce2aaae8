"""Error hierarchy shared by the library and the command-line front end.

Every error carries the process exit status the CLI reports for it.
"""

from __future__ import annotations


class WordSurfError(Exception):
    """Base class for all wordsurf failures."""

    exit_code = 1


class UsageError(WordSurfError, ValueError):
    """Bad command-line input (flag syntax, unknown names)."""

    exit_code = 2


class PgmFormatError(WordSurfError, ValueError):
    """Raised when a PGM byte stream cannot be parsed."""

    exit_code = 3

    def __init__(self, field: str, message: str):
        super().__init__(f"invalid PGM {field}: {message}")
        self.field = field


class ImageIOError(WordSurfError, OSError):
    """Raised when an image file cannot be read or written."""

    exit_code = 4


class UnsupportedDepthError(WordSurfError, ValueError):
    """Raised when an image has more bits per pixel than a format supports."""

    exit_code = 5


class ConfigurationError(WordSurfError, ValueError):
    """Invalid method, shift or word-length configuration."""

    exit_code = 6


class InvalidShiftError(ConfigurationError):
    """Raised when a pixel shift would discard every pixel bit."""


class IntegralConfigError(ConfigurationError):
    """Raised when an integral image word length cannot hold a single pixel."""


class PlanValidationError(ConfigurationError):
    """Raised when a comparison plan definition is invalid."""


class ScheduleError(WordSurfError, ValueError):
    """Raised when no usable filter schedule fits the image."""

    exit_code = 7


class LayoutError(WordSurfError, ValueError):
    """Raised for filter sizes that have no box-filter layout."""

    exit_code = 8


class ScaleSpaceError(WordSurfError, ValueError):
    """Raised when response maps cannot be combined into a scale-space volume."""

    exit_code = 8


class ArityError(ScaleSpaceError):
    """Raised when non-maximum suppression gets the wrong number of layers."""


class IntegralValidationError(WordSurfError, ValueError):
    """Raised when an integral image does not match its source or plan."""

    exit_code = 9


class RectBoundsError(WordSurfError, IndexError):
    """Raised when a rectangle reaches outside the image it addresses."""

    exit_code = 9


class DatasetError(WordSurfError):
    """Base class for dataset acquisition failures."""

    exit_code = 10


class UnknownSceneError(UsageError):
    """Raised for scene names outside the known benchmark set."""


class DownloadError(DatasetError, OSError):
    """Raised when the dataset archive cannot be downloaded."""

    exit_code = 10


class SizeMismatchError(DatasetError, ValueError):
    """Raised when a download does not match its declared size."""

    exit_code = 11


class CacheWriteError(DatasetError, OSError):
    """Raised when the dataset cache cannot be written."""

    exit_code = 12
