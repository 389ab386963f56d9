"""zetasums: zeros of truncated zeta sums F(s) = sum_{n<=X} n^(-s).

Evaluation kernel, strip bounds, argument-principle counting, zero
localization, distribution statistics, and Littlewood-lemma identity checks,
plus a reproducible CLI (``zetasums --help``).
"""

from .errors import (
    AtZeroError,
    BoundaryZeroError,
    EvaluationOverflowError,
    NoConvergenceError,
    NonIntegralWindingError,
    NonconvergentPanelError,
    NumericalError,
    ZeroOnPathError,
)
from .littlewood import (
    LittlewoodCheck,
    arg_integral_horizontal,
    integrate_log_abs,
    littlewood_identity_check,
    mean_square_integral,
)
from .partial_sum import PartialSumSpec, mean_square_main_term
from .stats import (
    MollifierCoeffs,
    StatReport,
    StatRow,
    average_abscissa,
    build_report,
    count_above,
    count_bound_above_half,
    density_ratio,
    divisor_count_sieve,
    excess_sum,
    half_line_excess_bound,
    left_excess_bound,
    mobius_sieve,
    mollifier_coeffs,
    shifted_sum_main_term,
)
from .strip import (
    StripBounds,
    alpha_bound,
    beta_bound,
    compute_strip,
    montgomery_line,
    turan_line,
)
from .winding import (
    ArgTrace,
    Rectangle,
    count_main_term,
    count_up_to,
    rectangle_winding,
    top_edge_sign_change_bound,
    track_argument,
)
from .zeros import ZeroRecord, locate_zeros, refine

__version__ = "0.1.0"

__all__ = [
    "ArgTrace",
    "AtZeroError",
    "BoundaryZeroError",
    "EvaluationOverflowError",
    "LittlewoodCheck",
    "MollifierCoeffs",
    "NoConvergenceError",
    "NonIntegralWindingError",
    "NonconvergentPanelError",
    "NumericalError",
    "PartialSumSpec",
    "Rectangle",
    "StatReport",
    "StatRow",
    "StripBounds",
    "ZeroOnPathError",
    "ZeroRecord",
    "alpha_bound",
    "arg_integral_horizontal",
    "average_abscissa",
    "beta_bound",
    "build_report",
    "compute_strip",
    "count_above",
    "count_bound_above_half",
    "count_main_term",
    "count_up_to",
    "density_ratio",
    "divisor_count_sieve",
    "excess_sum",
    "half_line_excess_bound",
    "integrate_log_abs",
    "left_excess_bound",
    "littlewood_identity_check",
    "locate_zeros",
    "mean_square_integral",
    "mean_square_main_term",
    "mobius_sieve",
    "mollifier_coeffs",
    "montgomery_line",
    "rectangle_winding",
    "refine",
    "shifted_sum_main_term",
    "top_edge_sign_change_bound",
    "track_argument",
    "turan_line",
    "__version__",
]
