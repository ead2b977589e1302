"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can emit
structured error JSON without string matching.
"""
from __future__ import annotations


class MeshRoutingError(Exception):
    code = "error"


class InvalidSpec(MeshRoutingError, ValueError):
    code = "invalid_spec"


class UnknownTbu(MeshRoutingError, KeyError):
    code = "unknown_tbu"

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return Exception.__str__(self)


class LengthMismatch(MeshRoutingError, ValueError):
    code = "length_mismatch"


class TooLarge(MeshRoutingError, ValueError):
    code = "too_large"


class UnsupportedFamily(MeshRoutingError, ValueError):
    code = "unsupported_family"


class MalformedSum(MeshRoutingError, ArithmeticError):
    code = "malformed_sum"


class OutOfRange(MeshRoutingError, ValueError):
    code = "out_of_range"


class NotRealizable(MeshRoutingError, ValueError):
    code = "not_realizable"


class EmptyMeasurements(MeshRoutingError, ValueError):
    code = "empty_measurements"


class InconsistentK(MeshRoutingError, ValueError):
    code = "inconsistent_k"


class NoCandidateInWindow(MeshRoutingError, ValueError):
    code = "no_candidate_in_window"


class NoInteriorTbu(MeshRoutingError, ValueError):
    code = "no_interior_tbu"


class NoSizeWithinCap(MeshRoutingError, ValueError):
    code = "no_size_within_cap"


class EmptyFrontier(MeshRoutingError, ValueError):
    code = "empty_frontier"
