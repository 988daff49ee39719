"""
Frobenius solutions of the hypergeometric operator

    theta^n - z (theta + a_1) ... (theta + a_n),

the mirror map ``q(a|z) = z exp(G/F)`` and the Euler-identity check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .series import ONE, ZERO, Rational, Series, exp_log, format_rational, pow_alpha, to_rational


@dataclass(frozen=True)
class HGParams:
    """A multiset of rational parameters in (0, 1), stored as a sorted tuple."""

    a: tuple

    def __init__(self, a):
        if isinstance(a, str):
            a = [s for s in a.split(",") if s.strip()]
        vals = tuple(sorted(to_rational(x) for x in a))
        if not vals:
            raise ValueError("need at least one parameter")
        for x in vals:
            if not 0 < x < 1:
                raise ValueError(f"parameter {format_rational(x)} not in (0, 1)")
        object.__setattr__(self, "a", vals)

    @classmethod
    def parse(cls, text: str) -> "HGParams":
        return cls(text)

    def __str__(self) -> str:
        return ",".join(format_rational(x) for x in self.a)

    def __iter__(self):
        return iter(self.a)

    def __len__(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def c(self) -> int:
        """lcm of the parameter denominators."""
        return math.lcm(*(int(x.denominator) for x in self.a))

    def is_good(self, p: int) -> bool:
        return self.c % p != 0

    def reflect(self) -> "HGParams":
        """The multiset ``{1 - a_i}``."""
        return HGParams([1 - x for x in self.a])


def as_params(a) -> HGParams:
    return a if isinstance(a, HGParams) else HGParams(a)


def pochhammer(x, k: int) -> Rational:
    x = to_rational(x)
    out = ONE
    for i in range(k):
        out *= x + i
    return out


@lru_cache(maxsize=64)
def _fg_coeffs(a: HGParams, order: int):
    n = a.n
    f, g = [], []
    term, harm = ONE, ZERO
    for k in range(order):
        f.append(term)
        g.append(term * harm)
        # advance (a)_k/(k!)^n and the inner double sum to k+1
        num = ONE
        for x in a.a:
            num *= x + k
            harm += 1 / (x + k)
        harm -= mpq(n, k + 1)
        term = term * num / (k + 1) ** n
    return tuple(f), tuple(g)


def series_F(a, order: int) -> Series:
    """Holomorphic solution: coefficient ``k`` is ``prod (a_i)_k / k!^n``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return Series._raw(_fg_coeffs(as_params(a), order)[0])


def series_G(a, order: int) -> Series:
    """Coefficient part of the first logarithmic solution ``G + F log z``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return Series._raw(_fg_coeffs(as_params(a), order)[1])


@lru_cache(maxsize=64)
def _ratio(a: HGParams, order: int) -> Series:
    return series_G(a, order) / series_F(a, order)


def ratio_GF(a, order: int) -> Series:
    """``G/F``; coefficient ``k`` is the value ``C_k(a)``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return _ratio(as_params(a), order)


@lru_cache(maxsize=32)
def _mirror(a: HGParams, order: int) -> Series:
    return exp_log(ratio_GF(a, order), "exp").shift(1)


def mirror_q(a, order: int) -> Series:
    """Mirror map ``z exp(G/F)``.

    The result has order ``order + 1``: the coefficients of ``z**1 .. z**order``
    are determined.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    return _mirror(as_params(a), order)


def ratio_equal(a, b, order: int) -> bool:
    """True iff ``C_k(a) == C_k(b)`` for ``1 <= k <= order``."""
    a, b = as_params(a), as_params(b)
    if a.n != b.n:
        raise ValueError("parameter multisets differ in size")
    if a == b:
        return True
    return ratio_GF(a, order + 1).coeffs[1:] == ratio_GF(b, order + 1).coeffs[1:]


def euler_identity_check(a1, b1, order: int) -> bool:
    """Check ``2F1(a,b;1|z) == (1-z)^(1-a-b) 2F1(1-a,1-b;1|z)`` to ``order``."""
    a1, b1 = to_rational(a1), to_rational(b1)
    lhs = series_F((a1, b1), order)
    one_minus_z = Series._raw(([ONE, -ONE] + [ZERO] * order)[:order])
    rhs = pow_alpha(one_minus_z, 1 - a1 - b1) * series_F((1 - a1, 1 - b1), order)
    return lhs == rhs
