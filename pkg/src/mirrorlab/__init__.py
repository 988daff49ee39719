"""Exact computations with hypergeometric mirror maps and their p-integrality."""

from .classify import (
    ClassificationEntry,
    enumerate_candidates,
    enumerate_n2,
    genfun_coeffs,
    phi_partitions,
    triangle_type,
)
from .dwork import (
    IntegralityReport,
    condition_check,
    dieudonne_test,
    dwork_op,
    dwork_structure_witness,
    dwork_theorem_check,
    fast_congruence,
    integrality_report,
    padic_val,
    prime_in_class,
    series_p_integral,
)
from .errors import *  # noqa: F401,F403
from .hypergeom import (
    HGParams,
    euler_identity_check,
    mirror_q,
    pochhammer,
    ratio_equal,
    ratio_GF,
    series_F,
    series_G,
)
from .modular import (
    CYCase,
    instanton_numbers,
    integrality_suite,
    lambert_series,
    n_constant,
    table1_cases,
    u_series,
    yukawa,
)
from .series import (
    Rational,
    Series,
    arith,
    compose,
    exp_log,
    format_rational,
    pow_alpha,
    rescale,
    revert,
    theta,
    to_rational,
)

__version__ = "0.1.0"
