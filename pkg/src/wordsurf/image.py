"""Grayscale image container and PGM reading/writing."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import ImageIOError, PgmFormatError, RectBoundsError, UnsupportedDepthError

logger = logging.getLogger(__name__)

MAX_PIXEL_BITS = 16
_HEADER_FIELDS = ("magic", "width", "height", "maxval")
_COMMENT = re.compile(rb"#[^\n]*")


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Immutable row-major grayscale raster with ``bits_per_pixel`` bits per pixel."""

    width: int
    height: int
    pixels: np.ndarray = field(repr=False)
    bits_per_pixel: int = 8

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be positive, got {self.width}x{self.height}")
        if not 1 <= self.bits_per_pixel <= MAX_PIXEL_BITS:
            raise UnsupportedDepthError(
                f"bits_per_pixel must be in [1, {MAX_PIXEL_BITS}], got {self.bits_per_pixel}"
            )
        pixels = np.asarray(self.pixels)
        if pixels.size != self.width * self.height:
            raise ValueError(
                f"pixel count {pixels.size} does not match {self.width}x{self.height}"
            )
        if pixels.size and (pixels.min() < 0 or pixels.max() > self.max_value):
            raise ValueError(
                f"pixel values must lie in [0, {self.max_value}] for {self.bits_per_pixel}-bit pixels"
            )
        dtype = np.uint8 if self.bits_per_pixel <= 8 else np.uint16
        stored = pixels.reshape(self.height, self.width).astype(dtype, copy=True)
        stored.setflags(write=False)
        object.__setattr__(self, "pixels", stored)

    @classmethod
    def from_array(cls, array: np.ndarray, bits_per_pixel: int = 8) -> "GrayImage":
        array = np.asarray(array)
        if array.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {array.shape}")
        height, width = array.shape
        return cls(width=width, height=height, pixels=array, bits_per_pixel=bits_per_pixel)

    @property
    def max_value(self) -> int:
        return (1 << self.bits_per_pixel) - 1

    @cached_property
    def exact_integral(self) -> np.ndarray:
        """Full-precision integral image, used as the validation shadow."""
        table = np.cumsum(np.cumsum(self.pixels, axis=0, dtype=np.int64), axis=1)
        table.setflags(write=False)
        return table

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.bits_per_pixel == other.bits_per_pixel
            and np.array_equal(self.pixels, other.pixels)
        )

    __hash__ = object.__hash__


@dataclass(frozen=True)
class Rect:
    """Inclusive pixel rectangle ``(x0, y0)``..``(x1, y1)``."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self) -> None:
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise RectBoundsError(f"degenerate rectangle {self}")

    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1

    @property
    def area(self) -> int:
        return self.width * self.height

    def check_within(self, width: int, height: int) -> None:
        if self.x0 < 0 or self.y0 < 0 or self.x1 >= width or self.y1 >= height:
            raise RectBoundsError(f"{self} lies outside a {width}x{height} image")


def _read_header(data: bytes) -> tuple[list[bytes], int]:
    tokens: list[bytes] = []
    pos = 0
    size = len(data)
    while len(tokens) < len(_HEADER_FIELDS):
        while pos < size:
            char = data[pos : pos + 1]
            if char.isspace():
                pos += 1
            elif char == b"#":
                newline = data.find(b"\n", pos)
                pos = size if newline < 0 else newline + 1
            else:
                break
        if pos >= size:
            raise PgmFormatError(_HEADER_FIELDS[len(tokens)], "truncated header")
        start = pos
        while pos < size and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def _header_int(token: bytes, field_name: str) -> int:
    if not token.isdigit():
        raise PgmFormatError(field_name, f"expected a decimal integer, got {token!r}")
    value = int(token)
    if value < 1:
        raise PgmFormatError(field_name, f"must be positive, got {value}")
    return value


def read_pgm(data: bytes) -> GrayImage:
    """Parse a binary (P5) or ASCII (P2) PGM with maxval <= 255."""
    tokens, pos = _read_header(data)
    magic = tokens[0]
    if magic not in (b"P5", b"P2"):
        raise PgmFormatError("magic", f"expected P5 or P2, got {magic!r}")
    width = _header_int(tokens[1], "width")
    height = _header_int(tokens[2], "height")
    maxval = _header_int(tokens[3], "maxval")
    if maxval > 255:
        raise PgmFormatError("maxval", f"{maxval} exceeds 255; only 8-bit PGM is supported")

    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        payload = data[pos + 1 : pos + 1 + count]
        if pos >= len(data) or len(payload) < count:
            raise PgmFormatError("payload", f"expected {count} bytes, got {len(payload)}")
        values = np.frombuffer(payload, dtype=np.uint8)
    else:
        words = _COMMENT.sub(b"", data[pos:]).split()
        if len(words) < count:
            raise PgmFormatError("payload", f"expected {count} samples, got {len(words)}")
        try:
            values = np.array([int(word) for word in words[:count]], dtype=np.int64)
        except ValueError as exc:
            raise PgmFormatError("pixels", str(exc)) from exc
    if values.size and int(values.max()) > maxval:
        raise PgmFormatError("pixels", f"sample value exceeds maxval {maxval}")
    return GrayImage(width=width, height=height, pixels=values, bits_per_pixel=8)


def write_pgm(img: GrayImage) -> bytes:
    """Serialize an image of at most 8 bits per pixel as binary P5."""
    if img.bits_per_pixel > 8:
        raise UnsupportedDepthError(
            f"PGM output supports at most 8 bits per pixel, image has {img.bits_per_pixel}"
        )
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.astype(np.uint8).tobytes()


def load_image(path: str | Path) -> GrayImage:
    """Read a PGM directly, or any Pillow-readable file converted to 8-bit gray."""
    path = Path(path)
    try:
        if path.suffix.lower() == ".pgm":
            return read_pgm(path.read_bytes())
        with Image.open(path) as handle:
            gray = np.asarray(handle.convert("L"), dtype=np.uint8)
    except (OSError, UnidentifiedImageError) as exc:
        raise ImageIOError(f"cannot read image {path}: {exc}") from exc
    logger.debug("converted %s to 8-bit grayscale", path)
    return GrayImage.from_array(gray)


def save_pgm(img: GrayImage, path: str | Path) -> Path:
    path = Path(path)
    try:
        path.write_bytes(write_pgm(img))
    except OSError as exc:
        raise ImageIOError(f"cannot write image {path}: {exc}") from exc
    return path
