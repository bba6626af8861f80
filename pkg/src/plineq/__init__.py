"""plineq: exact piecewise-linear verification of integral inequalities."""

from .classes import (ClassReport, MWitness, classify_m, is_concave,
                      is_convex, is_monotone_on, is_nonnegative, is_symmetric)
from .generators import GenConfig
from .inequalities import (InequalityVerdict, check_chebyshev,
                           check_chebyshev_m, check_clausing_classic,
                           check_clausing_general, check_hermite_hadamard,
                           check_levin_steckin, check_ls_symmetric_lemma,
                           check_q0_sharpness)
from .plfunction import (DomainError, PLFunction, constant, identity,
                         integrate_product, linear_combine, sample, tent)
from .search import SearchProblem, SearchResult, minimize_margin

__version__ = "0.1.0"

__all__ = [
    "ClassReport", "MWitness", "classify_m", "is_concave", "is_convex",
    "is_monotone_on", "is_nonnegative", "is_symmetric",
    "GenConfig",
    "InequalityVerdict", "check_chebyshev", "check_chebyshev_m",
    "check_clausing_classic", "check_clausing_general",
    "check_hermite_hadamard", "check_levin_steckin",
    "check_ls_symmetric_lemma", "check_q0_sharpness",
    "DomainError", "PLFunction", "constant", "identity",
    "integrate_product", "linear_combine", "sample", "tent",
    "SearchProblem", "SearchResult", "minimize_margin",
    "__version__",
]
