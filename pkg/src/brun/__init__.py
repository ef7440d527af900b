"""Certified lower and upper bounds for Brun's twin prime constant.

Everything rigorous in this package flows through one primitive: a closed
interval of IEEE-754 doubles whose arithmetic always rounds outward.  On
top of that sit a segmented twin prime sieve, census table handling, a
sieve-theoretic tail bound for the counting function of twin primes, and
(clearly flagged as non-rigorous) heuristic projections.
"""

__version__ = "0.1.0"

from .interval import EULER_GAMMA, Interval, ei_neg, rational_pow
from .sieve import TwinCensus, census
from .tables import CensusTableEntry, extend_partial_sum, load_table_dir
from .divisor_error import DivisorErrorScan, scan_c
from .euler_product import HBoundReport, h_bound, twin_constant
from .rv_bound import (
    BoundCertificate,
    RVParams,
    brun_upper,
    derive_params,
    idealized_params,
    pi2_upper,
)

__all__ = [
    "BoundCertificate",
    "CensusTableEntry",
    "DivisorErrorScan",
    "EULER_GAMMA",
    "HBoundReport",
    "Interval",
    "RVParams",
    "TwinCensus",
    "brun_upper",
    "census",
    "derive_params",
    "ei_neg",
    "extend_partial_sum",
    "h_bound",
    "idealized_params",
    "load_table_dir",
    "pi2_upper",
    "rational_pow",
    "scan_c",
    "twin_constant",
    "__version__",
]
