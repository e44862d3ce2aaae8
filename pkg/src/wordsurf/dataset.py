"""Acquisition of the affine-covariant benchmark scenes as PGM files."""

from __future__ import annotations

import io
import json
import logging
import tarfile
from dataclasses import dataclass
from pathlib import Path, PurePosixPath

import httpx
import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import CacheWriteError, DownloadError, SizeMismatchError, UnknownSceneError
from .image import GrayImage, write_pgm
from .settings import settings

logger = logging.getLogger(__name__)

KNOWN_SCENES: dict[str, str] = {
    "bark": "bark.tar.gz",
    "bikes": "bikes.tar.gz",
    "boat": "boat.tar.gz",
    "graffiti": "graf.tar.gz",
    "leuven": "leuven.tar.gz",
    "trees": "trees.tar.gz",
    "ubc": "ubc.tar.gz",
    "wall": "wall.tar.gz",
}
IMAGE_SUFFIXES = {".pgm", ".ppm", ".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff"}
MANIFEST_NAME = "manifest.json"


@dataclass
class FetchResult:
    scene: str
    directory: Path
    images: list[Path]
    cache_hit: bool


def _scene_archive(scene: str) -> str:
    try:
        return KNOWN_SCENES[scene]
    except KeyError:
        raise UnknownSceneError(
            f"unknown scene '{scene}'; known scenes: {', '.join(sorted(KNOWN_SCENES))}"
        ) from None


def _cached(directory: Path) -> list[Path] | None:
    manifest = directory / MANIFEST_NAME
    if not manifest.exists():
        return None
    names = json.loads(manifest.read_text(encoding="utf-8"))["images"]
    paths = [directory / name for name in names]
    if not all(path.exists() for path in paths):
        return None
    return paths


def download(url: str, timeout: float | None = None) -> bytes:
    """Stream ``url`` into memory, counting wire bytes against the declared Content-Length.

    A connection that closes before the declared length arrives is a size
    mismatch, not a generic download failure.
    """
    timeout = settings.http_timeout_seconds if timeout is None else timeout
    chunks: list[bytes] = []
    received = 0
    declared: str | None = None
    try:
        with httpx.Client(timeout=timeout, follow_redirects=True) as client:
            with client.stream("GET", url) as response:
                response.raise_for_status()
                encoded = response.headers.get("content-encoding", "identity") != "identity"
                # a declared length counts encoded bytes; only check identity bodies
                declared = None if encoded else response.headers.get("content-length")
                for chunk in response.iter_bytes() if encoded else response.iter_raw():
                    chunks.append(chunk)
                    received += len(chunk)
    except httpx.RemoteProtocolError as exc:
        if declared is not None:
            raise SizeMismatchError(f"{url} declared {declared} bytes but delivered {received}") from exc
        raise DownloadError(f"cannot download {url}: {exc}") from exc
    except httpx.HTTPError as exc:
        raise DownloadError(f"cannot download {url}: {exc}") from exc
    if declared is not None and int(declared) != received:
        raise SizeMismatchError(f"{url} declared {declared} bytes but delivered {received}")
    logger.debug("received %d bytes from %s", received, url)
    return b"".join(chunks)


def extract_images(archive: bytes) -> list[tuple[str, GrayImage]]:
    """Decode every image member of a tar archive to 8-bit grayscale, in name order."""
    images = []
    try:
        with tarfile.open(fileobj=io.BytesIO(archive), mode="r:*") as tar:
            members = sorted(
                (m for m in tar.getmembers() if m.isfile() and PurePosixPath(m.name).suffix.lower() in IMAGE_SUFFIXES),
                key=lambda m: m.name,
            )
            for member in members:
                handle = tar.extractfile(member)
                if handle is None:
                    continue
                with Image.open(io.BytesIO(handle.read())) as picture:
                    gray = GrayImage.from_array(np.asarray(picture.convert("L")))
                images.append((PurePosixPath(member.name).stem, gray))
    except (tarfile.TarError, UnidentifiedImageError, OSError) as exc:
        raise DownloadError(f"archive is not a readable image tarball: {exc}") from exc
    return images


def fetch_scene(
    scene: str,
    cache_dir: str | Path | None = None,
    base_url: str | None = None,
) -> FetchResult:
    archive_name = _scene_archive(scene)
    cache_root = Path(cache_dir).expanduser().resolve() if cache_dir else settings.cache_dir_path
    base_url = base_url or settings.dataset_base_url
    directory = cache_root / scene

    cached = _cached(directory)
    if cached is not None:
        logger.info("cache hit for scene %s in %s", scene, directory)
        return FetchResult(scene=scene, directory=directory, images=cached, cache_hit=True)

    url = base_url.rstrip("/") + "/" + archive_name
    logger.info("downloading %s", url)
    images = extract_images(download(url))
    if not images:
        raise DownloadError(f"{url} contains no images")

    try:
        directory.mkdir(parents=True, exist_ok=True)
        paths = []
        for stem, gray in images:
            path = directory / f"{stem}.pgm"
            path.write_bytes(write_pgm(gray))
            paths.append(path)
        manifest = {"scene": scene, "source": url, "images": [path.name for path in paths]}
        (directory / MANIFEST_NAME).write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise CacheWriteError(f"cannot write scene cache {directory}: {exc}") from exc
    logger.info("stored %d images of scene %s in %s", len(paths), scene, directory)
    return FetchResult(scene=scene, directory=directory, images=paths, cache_hit=False)
