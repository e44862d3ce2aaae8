"""Command-line front end: detection runs, comparisons, tables and dataset fetching."""

from __future__ import annotations

import argparse
import logging
import re
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from pydantic import ValidationError

from .analysis import (
    PlanLoader,
    compare_methods,
    reduction_csv,
    reduction_table,
    reduction_text,
    sizing_csv,
    sizing_table,
    sizing_text,
)
from .analysis.tables import TABLE_METHODS
from .dataset import fetch_scene
from .detector import points_to_csv, points_to_text, run_detection
from .errors import ImageIOError, UsageError, WordSurfError
from .image import GrayImage, load_image
from .integral import integral_to_csv
from .schemas import ReductionConfig, RunConfig
from .settings import settings
from .wordlen import ReductionMethod

logger = logging.getLogger(__name__)

FIELD_FLAGS = {
    "method": "--method",
    "shift": "--shift",
    "integral_bits": "--bits",
    "max_filter_width": "--max-filter",
    "max_filter_height": "--max-filter",
    "threshold": "--threshold",
    "octaves": "--octaves",
    "report_format": "--format",
    "output_dir": "--out",
}

_SIZE = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")
_RUN = re.compile(r"^(?P<method>[a-z-]+)(?::(?P<shift>\d+))?(?:@(?P<bits>\d+))?(?P<raw>\+raw)?$")


def _usage_from_validation(exc: ValidationError) -> UsageError:
    messages = []
    for error in exc.errors():
        names = [str(part) for part in error.get("loc", ())]
        flag = next((FIELD_FLAGS[name] for name in reversed(names) if name in FIELD_FLAGS), None)
        messages.append(f"{flag or 'option'}: {error.get('msg')}")
    return UsageError("; ".join(messages))


def parse_size(text: str) -> tuple[int, int]:
    match = _SIZE.match(text)
    if not match or int(match.group(1)) < 1 or int(match.group(2)) < 1:
        raise UsageError(f"expected a positive WxH size, got {text!r}")
    return int(match.group(1)), int(match.group(2))


def parse_sizes(text: str) -> list[tuple[int, int]]:
    parts = [part for part in text.split(",") if part.strip()]
    if not parts:
        raise UsageError("--sizes: expected at least one WxH size")
    try:
        return [parse_size(part) for part in parts]
    except UsageError as exc:
        raise UsageError(f"--sizes: {exc}") from None


def parse_run(text: str, max_filter: tuple[int, int]) -> ReductionConfig:
    """Parse ``METHOD[:P][@BITS][+raw]`` into a reduction config."""
    match = _RUN.match(text.strip())
    if not match:
        raise UsageError(f"--run: expected METHOD[:P][@BITS][+raw], got {text!r}")
    try:
        method = ReductionMethod(match.group("method"))
    except ValueError:
        choices = ", ".join(str(m) for m in ReductionMethod)
        raise UsageError(f"--run: unknown method {match.group('method')!r}; choose from {choices}") from None
    payload: dict[str, Any] = {
        "method": method,
        "shift": int(match.group("shift") or 0),
        "max_filter_width": max_filter[0],
        "max_filter_height": max_filter[1],
        "compensate_shift": not match.group("raw"),
    }
    if match.group("bits"):
        payload["integral_bits"] = int(match.group("bits"))
    try:
        return ReductionConfig(**payload)
    except ValidationError as exc:
        raise UsageError(f"--run {text}: {_usage_from_validation(exc)}") from None


def _reduction_config(args: argparse.Namespace) -> ReductionConfig:
    method = ReductionMethod(args.method)
    shift = args.shift
    if shift is None:
        if method.shifts_pixels:
            raise UsageError(f"--shift: method '{method}' needs a shift")
        shift = 0
    max_width, max_height = args.max_filter
    try:
        return ReductionConfig(
            method=method,
            shift=shift,
            max_filter_width=max_width,
            max_filter_height=max_height,
            integral_bits=args.bits,
            compensate_shift=not args.no_compensate,
        )
    except ValidationError as exc:
        raise _usage_from_validation(exc) from None


def _run_config(args: argparse.Namespace) -> RunConfig:
    reduction = _reduction_config(args)
    try:
        return RunConfig(
            inputs=[Path(path) for path in args.images],
            reduction=reduction,
            threshold=settings.threshold if args.threshold is None else args.threshold,
            octaves=settings.octaves if args.octaves is None else args.octaves,
            output_dir=Path(args.out) if args.out else settings.output_dir_path,
            report_format=args.format,
        )
    except ValidationError as exc:
        raise _usage_from_validation(exc) from None


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ImageIOError(f"cannot write {path}: {exc}") from exc


def _output_dir(path: Path) -> Path:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ImageIOError(f"cannot create output directory {path}: {exc}") from exc
    return path


def _report(exc: WordSurfError, context: str | None = None) -> int:
    prefix = f"{context}: " if context else ""
    print(f"error: {prefix}{exc}", file=sys.stderr)
    return exc.exit_code


def _detect_one(path: Path, run: RunConfig, dump_integral: bool) -> int:
    img = load_image(path)
    started = time.perf_counter()
    detection = run_detection(img, run.reduction, threshold=run.threshold, octaves=run.octaves)
    runtime = time.perf_counter() - started

    out_dir = run.output_dir
    if run.report_format in ("text", "both"):
        _write(out_dir / f"{path.stem}.points.txt", points_to_text(detection.points))
    if run.report_format in ("csv", "both"):
        _write(out_dir / f"{path.stem}.points.csv", points_to_csv(detection.points))
    if dump_integral:
        _write(out_dir / f"{path.stem}.integral.csv", integral_to_csv(detection.integral))

    word_plan = detection.plan
    print(
        f"# image={path} method={word_plan.method} shift={word_plan.pre_shift} "
        f"L_ii={word_plan.integral_bits} octaves={run.octaves} threshold={run.threshold:g} "
        f"runtime={runtime:.3f}s"
    )
    print(f"{len(detection.points)} points")
    return 0


def cmd_detect(args: argparse.Namespace) -> int:
    run = _run_config(args)
    _output_dir(run.output_dir)
    status = 0
    for path in run.inputs:
        try:
            _detect_one(path, run, args.dump_integral)
        except WordSurfError as exc:
            logger.debug("detection failed for %s", path, exc_info=True)
            status = status or _report(exc, str(path))
    return status


def _load_images(paths: Sequence[str]) -> tuple[list[tuple[str, GrayImage]], int]:
    images: list[tuple[str, GrayImage]] = []
    status = 0
    for raw in paths:
        path = Path(raw)
        try:
            images.append((path.stem, load_image(path)))
        except WordSurfError as exc:
            status = status or _report(exc, str(path))
    ids = [image_id for image_id, _ in images]
    duplicates = sorted({image_id for image_id in ids if ids.count(image_id) > 1})
    if duplicates:
        raise UsageError(f"images share file names: {', '.join(duplicates)}")
    return images, status


def cmd_compare(args: argparse.Namespace) -> int:
    threshold, octaves = args.threshold, args.octaves
    if args.plan:
        if args.run:
            raise UsageError("--plan and --run are mutually exclusive")
        try:
            comparison = PlanLoader(settings.plan_dir_path).load(args.plan)
        except FileNotFoundError as exc:
            raise UsageError(f"--plan: {exc}") from None
        configs = list(comparison.runs)
        threshold = comparison.threshold if threshold is None else threshold
        octaves = comparison.octaves if octaves is None else octaves
        logger.info("loaded comparison plan %s with %d runs", comparison.key, len(configs))
    else:
        configs = [parse_run(text, tuple(args.max_filter)) for text in args.run or []]
    if len(configs) < 2:
        raise UsageError("--run: a comparison needs a baseline and at least one more run")
    if threshold is not None and threshold < 0:
        raise UsageError("--threshold: must be non-negative")
    if octaves is not None and not 1 <= octaves <= 4:
        raise UsageError("--octaves: must be between 1 and 4")

    images, status = _load_images(args.images)
    if not images:
        print("error: no readable images", file=sys.stderr)
        return status or UsageError.exit_code

    report = compare_methods(images, configs, threshold=threshold, octaves=octaves)
    out_dir = _output_dir(Path(args.out) if args.out else settings.output_dir_path)
    _write(out_dir / "point_counts.csv", report.point_counts_csv())
    _write(out_dir / "run_summary.csv", report.run_summary_csv())
    print(report.summary_text(), end="")
    for cell in report.failed:
        print(f"error: {cell.image_id} [{cell.config.label}]: {cell.error}", file=sys.stderr)
    if report.failed:
        status = status or WordSurfError.exit_code
    return status


def cmd_tables(args: argparse.Namespace) -> int:
    sizes = parse_sizes(settings.table_sizes if args.sizes is None else args.sizes)
    if not 1 <= args.pixel_bits <= 16:
        raise UsageError("--pixel-bits: must be between 1 and 16")
    max_filter = tuple(args.max_filter)
    out_dir = _output_dir(Path(args.out) if args.out else settings.output_dir_path)

    rows = sizing_table(sizes, pixel_bits=args.pixel_bits)
    _write(out_dir / "sizing.csv", sizing_csv(rows))
    print(sizing_text(rows))
    for method in TABLE_METHODS:
        try:
            reduced = reduction_table(
                sizes,
                method,
                shift=args.shift,
                pixel_bits=args.pixel_bits,
                max_filter=max_filter,
            )
        except ValueError as exc:
            raise UsageError(f"--shift: {exc}") from None
        _write(out_dir / f"reduction_{method}.csv", reduction_csv(reduced))
        print(f"[{method}]")
        print(reduction_text(reduced))
    return 0


def cmd_fetch(args: argparse.Namespace) -> int:
    result = fetch_scene(args.scene, cache_dir=args.cache_dir, base_url=args.base_url)
    if result.cache_hit:
        print(f"cache hit: {len(result.images)} images of {result.scene} in {result.directory}")
    else:
        print(f"downloaded {len(result.images)} images of {result.scene} to {result.directory}")
    for path in result.images:
        print(path)
    return 0


def _max_filter(text: str) -> tuple[int, int]:
    try:
        return parse_size(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wordsurf",
        description="SURF detection over reduced word-length integral images.",
    )
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)
    default_filter = (settings.max_filter_width, settings.max_filter_height)

    detect = commands.add_parser("detect", help="detect interest points in images")
    detect.add_argument("images", nargs="+", help="PGM or Pillow-readable image files")
    detect.add_argument("--method", choices=[str(m) for m in ReductionMethod], default="full")
    detect.add_argument("--shift", type=int, default=None, help="pixel bit shift P")
    detect.add_argument("--threshold", type=float, default=None)
    detect.add_argument("--octaves", type=int, default=None)
    detect.add_argument("--bits", type=int, default=None, help="expert override of L_ii")
    detect.add_argument("--max-filter", type=_max_filter, default=default_filter, metavar="WxH")
    detect.add_argument(
        "--no-compensate",
        action="store_true",
        help="leave approximate responses at reduced scale",
    )
    detect.add_argument("--out", default=None, help="output directory")
    detect.add_argument("--format", choices=["text", "csv", "both"], default="text")
    detect.add_argument("--dump-integral", action="store_true", help="also write the integral image as CSV")
    detect.set_defaults(handler=cmd_detect)

    compare = commands.add_parser("compare", help="compare reduction methods against a baseline")
    compare.add_argument("images", nargs="+")
    compare.add_argument(
        "--run",
        action="append",
        metavar="METHOD[:P][@BITS][+raw]",
        help="a run to compare; the first is the baseline",
    )
    compare.add_argument("--plan", default=None, help="comparison plan key from the plan directory")
    compare.add_argument("--threshold", type=float, default=None)
    compare.add_argument("--octaves", type=int, default=None)
    compare.add_argument("--max-filter", type=_max_filter, default=default_filter, metavar="WxH")
    compare.add_argument("--out", default=None)
    compare.set_defaults(handler=cmd_compare)

    tables = commands.add_parser("tables", help="write word-length sizing and reduction tables")
    tables.add_argument("--sizes", default=None, metavar="WxH,...")
    tables.add_argument("--pixel-bits", type=int, default=settings.pixel_bits)
    tables.add_argument("--shift", type=int, default=2, help="shift for the even image table")
    tables.add_argument("--max-filter", type=_max_filter, default=default_filter, metavar="WxH")
    tables.add_argument("--out", default=None)
    tables.set_defaults(handler=cmd_tables)

    fetch = commands.add_parser("fetch", help="download a benchmark scene into the cache")
    fetch.add_argument("scene")
    fetch.add_argument("--base-url", default=None)
    fetch.add_argument("--cache-dir", default=None)
    fetch.set_defaults(handler=cmd_fetch)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return UsageError.exit_code if exc.code else 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO)

    try:
        return args.handler(args)
    except WordSurfError as exc:
        return _report(exc)
    except Exception as exc:  # noqa: BLE001
        logger.exception("unexpected failure: %s", exc)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
