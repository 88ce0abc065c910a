"""mahlerkit: exact-arithmetic experiments with Mahler functional equations."""

from fractions import Fraction

from .dyadic import Dyadic
from .enclosure import BoxC, Enclosure
from .errors import MahlerkitError
from .forms import AuxForm
from .mahler import (
    MahlerEquation,
    MahlerSystem,
    RegularityReport,
    companion_system,
    direct_sum,
    expand_series,
    find_regular_power,
    iterate_system,
    regularity,
    verify_equation,
)
from .parse import parse_fraction, parse_poly, parse_ratfun
from .poly import Poly
from .ratfun import MatRF, RatFun
from .series import TruncatedSeries

__all__ = [
    "AuxForm",
    "BoxC",
    "Dyadic",
    "Enclosure",
    "Fraction",
    "MahlerEquation",
    "MahlerSystem",
    "MahlerkitError",
    "MatRF",
    "Poly",
    "RatFun",
    "RegularityReport",
    "TruncatedSeries",
    "companion_system",
    "direct_sum",
    "expand_series",
    "find_regular_power",
    "iterate_system",
    "parse_fraction",
    "parse_poly",
    "parse_ratfun",
    "regularity",
    "verify_equation",
]

__version__ = "0.1.0"
