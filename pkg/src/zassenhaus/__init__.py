"""Exact Zassenhaus and Baker-Campbell-Hausdorff series over two letters.

Computes the product-formula exponents and BCH terms as exact rational
word series, translates them into left-normed nested commutators by three
schemes, and cross-checks everything by brute-force expansion in the
truncated free algebra.
"""

__version__ = "0.1.0"

from .commutators import (
    CommutatorSeries,
    commutator_to_words,
    dynkin_translate,
    oteo_ab_translate,
    oteo_ba_translate,
    verify_translation,
)
from .engine import (
    Budget,
    BudgetExceeded,
    SeriesCache,
    bch_all,
    bch_term,
    corner_row,
    zassenhaus_all,
    zassenhaus_exponent,
)
from .oracle import (
    GradedSeries,
    bch_check,
    truncated_exp,
    zassenhaus_product_check,
)
from .rationals import Q
from .taumatrix import (
    MultilinearPoly,
    SupportOverlapError,
    TriMatrix,
    build_h,
    build_k,
    build_l,
    build_p,
    build_q,
    mat_mul,
    nilpotent_exp,
    nilpotent_log,
    series_to_matrix,
    u_translate,
    word_to_matrix,
)
from .words import (
    VerificationReport,
    Word,
    WordSeries,
    coefficient_sum,
    expand_left_normed,
    series_add,
    series_mul,
    word_series,
)

__all__ = [
    "Budget",
    "BudgetExceeded",
    "CommutatorSeries",
    "GradedSeries",
    "MultilinearPoly",
    "Q",
    "SeriesCache",
    "SupportOverlapError",
    "TriMatrix",
    "VerificationReport",
    "Word",
    "WordSeries",
    "bch_all",
    "bch_check",
    "bch_term",
    "build_h",
    "build_k",
    "build_l",
    "build_p",
    "build_q",
    "coefficient_sum",
    "commutator_to_words",
    "corner_row",
    "dynkin_translate",
    "expand_left_normed",
    "mat_mul",
    "nilpotent_exp",
    "nilpotent_log",
    "oteo_ab_translate",
    "oteo_ba_translate",
    "series_add",
    "series_mul",
    "series_to_matrix",
    "truncated_exp",
    "u_translate",
    "verify_translation",
    "word_series",
    "word_to_matrix",
    "zassenhaus_all",
    "zassenhaus_exponent",
    "zassenhaus_product_check",
]
