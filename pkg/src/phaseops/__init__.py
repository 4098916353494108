"""Cosine and sine phase operators built from orthogonal polynomials on [-1, 1]."""

__version__ = "0.1.0"

from .errors import PhaseOpsError  # noqa: E402
from .families import (  # noqa: E402
    AngleKind,
    FamilySpec,
    Kind,
    RecurrenceTable,
    eval_angle,
    eval_p,
    make_family,
    recurrence_table,
    weight,
)

__all__ = [
    "__version__",
    "PhaseOpsError",
    "AngleKind",
    "FamilySpec",
    "Kind",
    "RecurrenceTable",
    "eval_angle",
    "eval_p",
    "make_family",
    "recurrence_table",
    "weight",
]
