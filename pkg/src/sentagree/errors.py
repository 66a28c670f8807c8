"""Exception hierarchy shared across the package.

Every error raised by the library carries a short machine-readable
``code`` so that command-line wrappers can emit a single parsable
diagnostic line without inspecting exception types.
"""

from __future__ import annotations

__all__ = [
    "SentagreeError",
    "CorpusFormatError",
    "UndefinedMeasureError",
    "VocabularyError",
    "ModelFormatError",
    "FoldPlanError",
    "EvaluationError",
]


class SentagreeError(ValueError):
    """Base class for all library errors."""

    code = "error"


class CorpusFormatError(SentagreeError):
    """An annotation or gold file violates the expected tabular format."""

    code = "corpus-format"


class UndefinedMeasureError(SentagreeError):
    """A reliability or performance measure is undefined on the given data."""

    code = "undefined-measure"


class VocabularyError(SentagreeError):
    """A vocabulary is empty, malformed, or inconsistent with its user."""

    code = "vocabulary"


class ModelFormatError(SentagreeError):
    """A serialized model is malformed or references a different vocabulary."""

    code = "model-format"


class FoldPlanError(SentagreeError):
    """A cross-validation split cannot be constructed for the given corpus."""

    code = "fold-plan"


class EvaluationError(SentagreeError):
    """Training or scoring failed while evaluating a classifier."""

    code = "evaluation"
