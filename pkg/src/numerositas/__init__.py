"""Exact numerosities of definable sets, ordinal arithmetic below epsilon_0,
and counting measures on plurintervals."""

from .errors import (
    ArgumentNotBelowThetaJPlus1,
    BetaNotEvaluable,
    ComplexityExceeded,
    DivisionByZero,
    EmptyTarget,
    ExponentNotFinite,
    ExponentNotIntegralAtLevel,
    IllFormed,
    NumerositasError,
    ParseError,
    ResultAboveEpsilon0,
    Unsupported,
)
from .euclid import (
    ALPHA,
    BETA,
    Classification,
    Comparison,
    Quotient,
    Special,
    Value,
    classify,
    compare,
    divide,
    evaluate_at_level,
    parse_value,
    standard_part,
)
from .labels import count_brute, grid_contains, level_value
from .measure import PlurInterval, lebesgue_measure, mu, num_plurinterval, parse_plurinterval, pj_measure
from .numerosity import CountForm, count_form, num, verify
from .ordinal import Ordinal, embed, from_theta_base, is_irreducible, nat_add, nat_mul, ord_add, ord_mul, ord_pow, theta, to_theta_base
from .setlang import parse_ordinal, parse_set, render

__version__ = "0.1.0"
