"""Declarative comparison plans loaded from YAML."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, Field, model_validator

from wordsurf.errors import PlanValidationError
from wordsurf.schemas import ReductionConfig


class ComparisonPlan(BaseModel):
    """A baseline run followed by the runs compared against it."""

    key: str = Field(..., min_length=1)
    description: Optional[str] = None
    threshold: Optional[float] = Field(default=None, ge=0)
    octaves: Optional[int] = Field(default=None, ge=1, le=4)
    runs: List[ReductionConfig] = Field(..., min_length=2)

    @model_validator(mode="after")
    def validate_unique_runs(self) -> "ComparisonPlan":
        labels = [run.label for run in self.runs]
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        if duplicates:
            raise ValueError(f"plan '{self.key}' repeats runs: {', '.join(duplicates)}")
        return self


class PlanValidator:
    """Validates and normalizes plan payloads."""

    def validate(self, payload: Dict[str, Any]) -> ComparisonPlan:
        try:
            return ComparisonPlan.model_validate(payload)
        except Exception as exc:  # noqa: BLE001
            raise PlanValidationError(str(exc)) from exc


class PlanLoader:
    """Loads and validates YAML comparison plans from a directory."""

    def __init__(self, plan_dir: str | Path):
        self.plan_dir = Path(plan_dir).expanduser().resolve()
        self.validator = PlanValidator()

    def load(self, plan_key: str) -> ComparisonPlan:
        file_path = self.plan_dir / f"{plan_key}.yaml"
        if not file_path.exists():
            raise FileNotFoundError(f"Comparison plan not found for '{plan_key}' at {file_path}")

        with file_path.open("r", encoding="utf-8") as handle:
            payload = yaml.safe_load(handle) or {}

        if not isinstance(payload, dict):
            raise PlanValidationError(f"plan '{plan_key}' must be a mapping")
        if "key" not in payload:
            payload["key"] = plan_key
        return self.validator.validate(payload)

    def available(self) -> list[str]:
        return sorted(path.stem for path in self.plan_dir.glob("*.yaml"))
