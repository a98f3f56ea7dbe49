"""Erdos-Ko-Rado sets of flags of finite sets: opposition, shifting, weights,
extremal families and exact independence numbers of Gamma(n, T)."""

from .certificate import Certificate
from .families import (
    KnownValue,
    Source,
    build_family_i,
    conjecture_value,
    induction_bound_check,
    known_alpha,
)
from .setcore import (
    ElementSet,
    Flag,
    FlagFamily,
    FlagType,
    GraphSpec,
    PreconditionError,
    elements_opposite,
    enumerate_flags,
    flags_opposite,
    is_independent,
    is_maximal_independent,
)
from .shifting import (
    ShiftPair,
    is_left_shifted,
    left_shift_normalize,
    shift_family,
    shift_flag,
    shift_set,
)
from .solver import (
    SolverConfig,
    SolverResult,
    alpha_bruteforce,
    alpha_exact,
    certify_lower_bound,
    verify_table2,
)
from .weights import (
    certify_full_weight_condition,
    certify_technical_weights,
    certify_weight_A,
    certify_weight_dichotomy,
    weight_of_aset,
    weight_of_bset,
)

__version__ = "0.1.0"
