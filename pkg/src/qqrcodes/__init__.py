"""Quadratic-residue and quasi-quadratic-residue binary codes.

Construction, exact weight enumerators, Gleason and divisibility-based
reconstruction, weight-table audits, hyperelliptic point counts, zeta
polynomials and weight statistics.
"""
from .codes import CodeFamily, build, prime_params
from .enumerator import WeightDistribution, weight_distribution
from .gf2 import BitMatrix, BitVector, LinearCode, get_budget, set_budget

__version__ = "0.1.0"

__all__ = [
    "BitMatrix", "BitVector", "CodeFamily", "LinearCode", "WeightDistribution",
    "build", "get_budget", "prime_params", "set_budget", "weight_distribution",
]
