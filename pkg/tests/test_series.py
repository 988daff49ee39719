from fractions import Fraction
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorlab.errors import (
    BadConstantTerm,
    DivisionByNonUnit,
    NonNilpotentInner,
    NotReversible,
)
from mirrorlab.hypergeom import mirror_q, series_F
from mirrorlab.series import (
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

Z = sympy.Symbol("z")


def sympy_coeffs(expr, order):
    """Taylor coefficients of a sympy expression, as an independent oracle."""
    poly = sympy.series(expr, Z, 0, order).removeO()
    return [Fraction(str(poly.coeff(Z, k))) for k in range(order)]


def S(*coeffs):
    return Series(coeffs)


small_q = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def series_st(order, const=None):
    if const is None:
        return st.lists(small_q, min_size=order, max_size=order).map(Series)
    return st.lists(small_q, min_size=order - 1, max_size=order - 1).map(
        lambda xs: Series([const] + xs))


# -- rationals ------------------------------------------------------------------

def test_rational_text_roundtrip():
    assert to_rational("−3/6") == to_rational("-1/2")
    assert format_rational(to_rational("-1/2")) == "-1/2"
    assert format_rational(to_rational("8/4")) == "2"
    with pytest.raises(ValueError):
        to_rational("1.5")
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_series_json_roundtrip():
    f = S(1, Fraction(-2, 3), 0, 7)
    assert f.to_json() == '["1", "-2/3", "0", "7"]'
    assert Series.from_json(f.to_json()) == f


# -- arith ------------------------------------------------------------------------

def test_difference_of_squares():
    assert arith(S(1, 1, 0), S(1, -1, 0), "mul") == S(1, 0, -1)


def test_geometric_series():
    assert arith(S(1, 0, 0, 0), S(1, -1, 0, 0), "div") == S(1, 1, 1, 1)


def test_self_division():
    f = S(1, 1, 0, 0, 0)
    assert f / f == S(1, 0, 0, 0, 0)


def test_orders_take_minimum():
    assert (S(1, 2, 3) + S(1, 1)).order == 2
    assert (S(1, 2, 3) * S(1, 1, 1, 1)).order == 3


def test_division_by_non_unit():
    with pytest.raises(DivisionByNonUnit):
        S(1, 1) / S(0, 1)


def test_arith_rejects_unknown_op():
    with pytest.raises(ValueError):
        arith(S(1), S(1), "pow")


def test_series_is_immutable():
    f = S(1, 2)
    with pytest.raises(AttributeError):
        f.foo = 1


# -- exp / log ----------------------------------------------------------------------

def test_exp_zero():
    assert exp_log(S(0, 0, 0, 0), "exp") == S(1, 0, 0, 0)


def test_exp_z():
    assert exp_log(S(0, 1, 0, 0), "exp") == S(1, 1, Fraction(1, 2), Fraction(1, 6))


def test_log_one_minus_z():
    assert exp_log(S(1, -1, 0, 0), "log") == S(0, -1, Fraction(-1, 2), Fraction(-1, 3))


def test_exp_log_against_sympy():
    f = S(0, 2, Fraction(-1, 3), 5, 0, 1, 0, 0)
    expr = sum(sympy.Rational(str(c)) * Z ** k for k, c in enumerate(f))
    assert list(exp_log(f, "exp")) == sympy_coeffs(sympy.exp(expr), 8)


def test_bad_constant_terms():
    with pytest.raises(BadConstantTerm):
        exp_log(S(1, 1), "exp")
    with pytest.raises(BadConstantTerm):
        exp_log(S(2, 1), "log")
    with pytest.raises(BadConstantTerm):
        pow_alpha(S(2, 1), 2)


# -- pow_alpha --------------------------------------------------------------------

def test_pow_minus_one():
    assert pow_alpha(S(1, -1, 0), -1) == S(1, 1, 1)


def test_pow_half_binomial_oracle():
    # (1 - z)^(1/2) = sum binom(1/2, k) (-z)^k
    def binom_half(k):
        out = Fraction(1)
        for i in range(k):
            out *= (Fraction(1, 2) - i) / (i + 1)
        return out

    expect = [binom_half(k) * (-1) ** k for k in range(10)]
    assert expect[:3] == [1, Fraction(-1, 2), Fraction(-1, 8)]
    assert list(pow_alpha(Series([1, -1] + [0] * 8), Fraction(1, 2))) == expect


def test_pow_zero():
    assert pow_alpha(S(1, 3, 7, 2), 0) == S(1, 0, 0, 0)


@given(series_st(8, const=1), st.integers(0, 5))
def test_pow_integer_matches_repeated_product(f, e):
    prod = Series.constant(1, f.order)
    for _ in range(e):
        prod = prod * f
    assert pow_alpha(f, e) == prod


@settings(max_examples=50)
@given(series_st(8, const=1), small_q)
def test_pow_alpha_is_exp_alpha_log(f, alpha):
    assert pow_alpha(f, alpha) == exp_log(exp_log(f, "log") * to_rational(alpha), "exp")


# -- compose / revert ---------------------------------------------------------------

def test_compose_monomial():
    assert compose(S(1, 1, 1, 0, 0), S(0, 0, 1, 0, 0)) == S(1, 0, 1, 0, 1)


@given(series_st(7))
def test_compose_identity(f):
    assert compose(f, Series.z(7)) == f


def test_compose_exp_log():
    e = exp_log(S(0, 1, 0, 0), "exp")
    l1p = exp_log(S(1, 1, 0, 0), "log")
    assert compose(e, l1p) == S(1, 1, 0, 0)


def test_compose_against_sympy():
    f = S(1, 2, Fraction(1, 3), -1, 4, 0)
    g = S(0, 1, -1, Fraction(1, 2), 0, 3)
    fx = sum(sympy.Rational(str(c)) * Z ** k for k, c in enumerate(f))
    gx = sum(sympy.Rational(str(c)) * Z ** k for k, c in enumerate(g))
    assert list(compose(f, g)) == sympy_coeffs(fx.subs(Z, gx), 6)


def test_compose_rejects_unit_inner():
    with pytest.raises(NonNilpotentInner):
        compose(S(1, 1), S(1, 1))


def test_revert_identity():
    assert revert(Series.z(6)) == Series.z(6)


def _revert_oracle(f, order):
    """Undetermined coefficients: solve f(g) = z one coefficient at a time."""
    g = [Fraction(0), 1 / Fraction(str(f[1]))]
    fq = [Fraction(str(c)) for c in f]
    for n in range(2, order):
        g.append(Fraction(0))
        # coefficient n of f(g) is linear in g_n with slope f_1
        coeff = Fraction(0)
        power = [Fraction(1)] + [Fraction(0)] * n
        for k in range(1, n + 1):
            power = [sum(power[i] * g[j - i] for i in range(j + 1)) for j in range(n + 1)]
            coeff += fq[k] * power[n]
        g[n] = -coeff / fq[1]
    return g


def test_revert_z_plus_z2():
    assert revert(S(0, 1, 1, 0)) == S(0, 1, -1, 2)
    assert list(revert(S(0, 1, 1, 0, 0, 0, 0))) == _revert_oracle(S(0, 1, 1, 0, 0, 0, 0), 7)


def test_revert_against_oracle_general():
    f = S(0, 3, Fraction(-1, 2), 2, 0, Fraction(5, 7), 1, -1, 0)
    assert list(revert(f)) == _revert_oracle(f, f.order)


def test_revert_quintic_mirror():
    q = mirror_q("1/5,2/5,3/5,4/5", 6)
    assert q[2] == Fraction(154, 625)
    assert revert(q)[2] == Fraction(-154, 625)


def test_revert_errors():
    with pytest.raises(NotReversible):
        revert(S(1, 1, 0))
    with pytest.raises(NotReversible):
        revert(S(0, 0, 1))
    with pytest.raises(NotReversible):
        revert(S(0))


# -- theta / rescale ----------------------------------------------------------------

def test_theta_examples():
    assert theta(S(1, 0, 0)) == S(0, 0, 0)
    assert theta(S(0, 0, 0, 1)) == S(0, 0, 0, 3)
    assert theta(S(0, 1, 2)) == S(0, 1, 4)


def test_rescale_examples():
    f = S(1, 1, 1)
    assert rescale(f, 1) == f
    assert rescale(f, 2) == S(1, 2, 4)


def test_rescale_quintic_integral_multinomial_oracle():
    F = rescale(series_F("1/5,2/5,3/5,4/5", 40), 5 ** 5)
    for k, c in enumerate(F):
        assert c == factorial(5 * k) // factorial(k) ** 5
        assert c.denominator == 1


def test_rescale_small_binomial():
    # (1/2)_k^2 / k!^2 * 16^k = binom(2k, k)^2
    F = rescale(series_F("1/2,1/2", 15), 16)
    assert list(F) == [comb(2 * k, k) ** 2 for k in range(15)]


# -- ring and calculus properties ---------------------------------------------------

@given(series_st(12), series_st(12), series_st(12))
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * (g * h) == (f * g) * h


@settings(max_examples=50)
@given(series_st(10, const=1))
def test_exp_log_inverse(f):
    assert exp_log(exp_log(f, "log"), "exp") == f


@given(series_st(10, const=0))
def test_log_exp_inverse(f):
    assert exp_log(exp_log(f, "exp"), "log") == f


@given(series_st(10), series_st(10))
def test_theta_leibniz(f, g):
    assert theta(f * g) == theta(f) * g + f * theta(g)


@settings(max_examples=50)
@given(series_st(9, const=0).filter(lambda f: f[1] != 0))
def test_revert_round_trip(f):
    g = revert(f)
    assert compose(f, g) == Series.z(f.order)
    assert compose(g, f) == Series.z(f.order)


@settings(max_examples=50)
@given(series_st(8, const=1), small_q, small_q)
def test_pow_alpha_additive(f, a, b):
    assert pow_alpha(f, a + b) == pow_alpha(f, a) * pow_alpha(f, b)
