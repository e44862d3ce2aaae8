"""Validated configuration models for wordsurf runs."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from .wordlen import MAX_INTEGRAL_BITS, ReductionMethod


class ReductionConfig(BaseModel):
    """Selects a word-length reduction method and its parameters."""

    method: ReductionMethod = ReductionMethod.FULL
    shift: int = Field(default=0, ge=0, le=15)
    max_filter_width: int = Field(default=129, ge=1)
    max_filter_height: int = Field(default=65, ge=1)
    integral_bits: Optional[int] = Field(default=None, ge=1, le=MAX_INTEGRAL_BITS)
    compensate_shift: bool = True

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def validate_shift(self) -> "ReductionConfig":
        if self.method.shifts_pixels and self.shift < 1:
            raise ValueError(f"method '{self.method}' needs a shift of at least 1 bit")
        if not self.method.shifts_pixels and self.shift:
            raise ValueError(f"method '{self.method}' does not take a shift")
        return self

    @property
    def label(self) -> str:
        label = str(self.method)
        if self.method.shifts_pixels:
            label += f"-p{self.shift}"
        if self.method is ReductionMethod.APPROXIMATE and not self.compensate_shift:
            label += "-raw"
        if self.integral_bits is not None:
            label += f"-b{self.integral_bits}"
        return label


class RunConfig(BaseModel):
    """Everything one detection command needs besides the images."""

    inputs: list[Path] = Field(default_factory=list)
    reduction: ReductionConfig = Field(default_factory=ReductionConfig)
    threshold: float = Field(default=50000.0, ge=0)
    octaves: int = Field(default=4, ge=1, le=4)
    output_dir: Path = Path("./out")
    report_format: str = Field(default="text", pattern="^(text|csv|both)$")
