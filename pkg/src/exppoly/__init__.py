"""Exact Laurent-polynomial algebra over exponential units with a numerical
Nevanlinna calculus engine."""

__version__ = "0.1.0"

from .scalars import GaussianRational
from .zpoly import ZPoly
from .ratfunc import RatFunc
from .units import UnitBasis, frequency_independence
from .laurent import (
    LaurentPoly,
    critical_pair,
    is_squarefree,
    laurent_divexact,
    laurent_gcd,
    monomial_shape,
    squarefree_decompose,
)
from .ypoly import (
    MonicYPoly,
    SeparationResult,
    discriminant,
    extract_roots,
    ratfunc_roots,
    resultant,
    separate_variable,
)
from .jacobian import euler_identity_holds, jacobian_det
from .expr import (
    parse_expression,
    parse_function,
    parse_xpoly,
    parse_ypoly,
    lower_functions,
    lower_to_symbolic,
    lower_ypoly,
    render,
    render_laurent,
    render_ypoly,
)

__all__ = [
    "__version__",
    "GaussianRational",
    "ZPoly",
    "RatFunc",
    "UnitBasis",
    "frequency_independence",
    "LaurentPoly",
    "critical_pair",
    "is_squarefree",
    "laurent_divexact",
    "laurent_gcd",
    "monomial_shape",
    "squarefree_decompose",
    "MonicYPoly",
    "SeparationResult",
    "discriminant",
    "extract_roots",
    "ratfunc_roots",
    "resultant",
    "separate_variable",
    "euler_identity_holds",
    "jacobian_det",
    "parse_expression",
    "parse_function",
    "parse_xpoly",
    "parse_ypoly",
    "lower_functions",
    "lower_to_symbolic",
    "lower_ypoly",
    "render",
    "render_laurent",
    "render_ypoly",
]
