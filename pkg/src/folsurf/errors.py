"""Exception hierarchy.

``InputError`` subclasses signal malformed input (CLI exit code 2); every other
``FolsurfError`` is a domain error (exit code 1).
"""

from __future__ import annotations


class FolsurfError(Exception):
    """Base class for all library errors."""

    kind = "domain_error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self) -> dict:
        out = {"error": self.kind, "message": self.message}
        for k, v in self.details.items():
            out[k] = v if isinstance(v, (int, str, bool, type(None))) else str(v)
        return out


class InputError(FolsurfError):
    kind = "input_error"


class ParseError(InputError):
    kind = "syntax_error"

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}", offset=offset)
        self.offset = offset


class ZeroFieldError(InputError):
    kind = "zero_field"


class SchemaError(InputError):
    kind = "schema_error"


class MixedFieldError(FolsurfError):
    kind = "mixed_quadratic_fields"


class DegreeCapExceeded(FolsurfError):
    kind = "degree_cap_exceeded"


class DepthExhausted(FolsurfError):
    kind = "depth_exhausted"


class NonRationalCenter(FolsurfError):
    kind = "non_rational_center"


class NotInvariant(FolsurfError):
    kind = "branch_not_invariant"


class TangencyUndefined(FolsurfError):
    kind = "tangency_undefined"


class OutsideClosedForm(FolsurfError):
    kind = "outside_closed_form"


class TruncationInsufficient(FolsurfError):
    kind = "truncation_insufficient"


class DegenerateFamily(FolsurfError):
    kind = "degenerate_family"


class PreconditionFailed(FolsurfError):
    kind = "precondition_failed"


class NotNegativeDefinite(FolsurfError):
    kind = "not_negative_definite"


class MissingData(FolsurfError):
    kind = "missing_data"


class SaddleNodePropagation(FolsurfError):
    kind = "saddle_node_propagation"


class UndefinedContribution(FolsurfError):
    kind = "undefined_contribution"


class InconsistentSheet(FolsurfError):
    kind = "inconsistent_sheet"


class InsufficientSamples(FolsurfError):
    kind = "insufficient_samples"
