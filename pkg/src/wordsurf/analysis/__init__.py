from .compare import ComparisonCell, ComparisonReport, compare_methods
from .plans import ComparisonPlan, PlanLoader, PlanValidator
from .tables import (
    ReductionRow,
    SizingRow,
    reduction_csv,
    reduction_table,
    reduction_text,
    sizing_csv,
    sizing_table,
    sizing_text,
)

__all__ = [
    "ComparisonCell",
    "ComparisonPlan",
    "ComparisonReport",
    "PlanLoader",
    "PlanValidator",
    "ReductionRow",
    "SizingRow",
    "compare_methods",
    "reduction_csv",
    "reduction_table",
    "reduction_text",
    "sizing_csv",
    "sizing_table",
    "sizing_text",
]
