"""Standalone wordsurf settings."""

from __future__ import annotations

from pathlib import Path

from pydantic_settings import BaseSettings

OXFORD_AFFINE_BASE_URL = "https://www.robots.ox.ac.uk/~vgg/research/affine/det_eval_files/"


class Settings(BaseSettings):
    threshold: float = 50000.0
    octaves: int = 4
    pixel_bits: int = 8
    max_filter_width: int = 129
    max_filter_height: int = 65
    table_sizes: str = "320x240,640x480,800x640,1024x768,1280x1024"
    output_dir: str = "./out"
    plan_dir: str = "./plans"
    cache_dir: str = "~/.cache/wordsurf"
    dataset_base_url: str = OXFORD_AFFINE_BASE_URL
    http_timeout_seconds: float = 60.0
    max_workers: int = 4

    class Config:
        env_file = ".env"
        env_prefix = "WORDSURF_"
        extra = "ignore"

    @property
    def plan_dir_path(self) -> Path:
        return Path(self.plan_dir).expanduser().resolve()

    @property
    def cache_dir_path(self) -> Path:
        return Path(self.cache_dir).expanduser().resolve()

    @property
    def output_dir_path(self) -> Path:
        return Path(self.output_dir).expanduser().resolve()


settings = Settings()
