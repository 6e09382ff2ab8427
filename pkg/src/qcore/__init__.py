"""Truncated q-series arithmetic and congruence checking for t-core partition tuples."""

from .congruences import (
    CongruenceClaim,
    expand_family,
    mine,
    parse_claim,
    run_suite,
    verify_claim,
)
from .eta import eval_expr, parse_expr
from .identities import recurrence_table, verify_identity
from .partitions import tuple_counts_gf, tuple_counts_oracle
from .report import VerificationReport
from .series import EXACT, CoefficientRing, TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "CoefficientRing",
    "CongruenceClaim",
    "TruncatedSeries",
    "VerificationReport",
    "eval_expr",
    "expand_family",
    "mine",
    "parse_claim",
    "parse_expr",
    "recurrence_table",
    "run_suite",
    "tuple_counts_gf",
    "tuple_counts_oracle",
    "verify_claim",
    "verify_identity",
]
