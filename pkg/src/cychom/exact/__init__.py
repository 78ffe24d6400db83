"""Exact scalar, series and sparse linear algebra substrate."""

from fractions import Fraction as Rational

from .sparse import SparseMatQ, rank, rank_kernel, solve_membership, MembershipResult
from .ulaurent import ULaurent, UFrac
from .series import QTSeries, align

__all__ = [
    "Rational",
    "SparseMatQ",
    "rank",
    "rank_kernel",
    "solve_membership",
    "MembershipResult",
    "ULaurent",
    "UFrac",
    "QTSeries",
    "align",
]
