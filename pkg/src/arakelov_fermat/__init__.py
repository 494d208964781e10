"""Exact intersection theory on the special fibre of Fermat curves at their bad prime."""

from .bounds import BoundExpression, a_p, make_bound, render
from .contraction import contract, minimal_model_correction, minimal_model_details, pullback
from .errors import (
    ArakelovError,
    BadSplit,
    DimensionMismatch,
    EmptyCuspList,
    InconsistentSystem,
    NormalizationInKernelComplement,
    NotContractible,
    NotPrime,
    SplitInconsistent,
    VerificationError,
    WrongExpressionKind,
)
from .exact_linalg import RationalMatrix, solve_affine
from .fermat import FermatModel, build, build_with_split, mirimanoff_split
from .lattice import (
    Component,
    FiberConfiguration,
    HorizontalProfile,
    VerticalDivisor,
    check_fiber_relation,
    pair_mixed,
    pair_vertical,
)
from .solver import CorrectionTarget, solve_canonical_vertical, solve_correction
from .verification import verify_prime

__all__ = [
    "ArakelovError",
    "BadSplit",
    "BoundExpression",
    "Component",
    "CorrectionTarget",
    "DimensionMismatch",
    "EmptyCuspList",
    "FermatModel",
    "FiberConfiguration",
    "HorizontalProfile",
    "InconsistentSystem",
    "NormalizationInKernelComplement",
    "NotContractible",
    "NotPrime",
    "RationalMatrix",
    "SplitInconsistent",
    "VerificationError",
    "VerticalDivisor",
    "WrongExpressionKind",
    "a_p",
    "build",
    "build_with_split",
    "check_fiber_relation",
    "contract",
    "make_bound",
    "minimal_model_correction",
    "minimal_model_details",
    "mirimanoff_split",
    "pair_mixed",
    "pair_vertical",
    "pullback",
    "render",
    "solve_affine",
    "solve_canonical_vertical",
    "solve_correction",
    "verify_prime",
]
