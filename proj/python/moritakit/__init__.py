"""Finite-fold coverings, crossed products, and strong Morita certificates.

The heavy lifting happens in the C++ extension; this package re-exports it.
"""

from ._core import (
    ArgumentError,
    Covering,
    DEFAULT_SEED,
    DimensionError,
    MembershipError,
    PreconditionError,
    ValidationError,
    builtin_suite,
    inner_covering,
    is_positive_semidefinite,
    least_squares_solve,
    operator_norm,
    set_covering,
    subspace_rank,
    verify_file,
    __version__,
)

__all__ = [
    "ArgumentError",
    "Covering",
    "DEFAULT_SEED",
    "DimensionError",
    "MembershipError",
    "PreconditionError",
    "ValidationError",
    "builtin_suite",
    "inner_covering",
    "is_positive_semidefinite",
    "least_squares_solve",
    "operator_norm",
    "set_covering",
    "subspace_rank",
    "verify_file",
    "__version__",
]
