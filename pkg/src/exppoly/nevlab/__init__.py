"""Numerical Nevanlinna calculus for exponential polynomials."""

from .evaluate import ExpPolyFunction
from .zeros import ZeroRecord, DiskScan, zeros_in_disk, scan_disk
from .nevanlinna import (
    NevanlinnaSample,
    analyze,
    characteristic,
    characteristic_map,
    counting_function,
    gcd_counting,
    jensen_check,
    order_estimate,
    proximity,
    proximity_inverse,
)
from .checks import (
    CheckReport,
    dpower_obstruction_check,
    first_main_check,
    gcd_smallness_check,
    logderiv_check,
    smt_moving_check,
    transversality_check,
    trunborel_check,
)

__all__ = [
    "ExpPolyFunction",
    "ZeroRecord",
    "DiskScan",
    "zeros_in_disk",
    "scan_disk",
    "NevanlinnaSample",
    "analyze",
    "characteristic",
    "characteristic_map",
    "counting_function",
    "gcd_counting",
    "jensen_check",
    "order_estimate",
    "proximity",
    "proximity_inverse",
    "CheckReport",
    "first_main_check",
    "logderiv_check",
    "trunborel_check",
    "smt_moving_check",
    "gcd_smallness_check",
    "dpower_obstruction_check",
    "transversality_check",
]
