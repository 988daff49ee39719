"""
The Dwork operator, p-integrality predicates and the congruence checks used
to test p-integrality of mirror maps.

Congruences modulo ``p Z_p[[z]]`` are checked coefficient-wise on exact
rationals: a coefficient is ``0 mod p`` iff its p-adic valuation is >= 1.
Every result is a statement about a truncation; nothing here claims
integrality beyond the order that was actually computed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import gmpy2
from gmpy2 import mpq

from .errors import BadConstantTerm, BadPrime, FormViolation, NotFound
from .hypergeom import HGParams, as_params, mirror_q, ratio_GF
from .series import Rational, Series, format_rational, pow_alpha, to_rational


def padic_val(x, p: int):
    """Exact p-adic valuation of a rational; ``math.inf`` for zero."""
    x = to_rational(x)
    if not x:
        return math.inf
    v_num = gmpy2.remove(x.numerator, p)[1] if x.numerator % p == 0 else 0
    v_den = gmpy2.remove(x.denominator, p)[1] if x.denominator % p == 0 else 0
    return int(v_num - v_den)


def is_p_integral(x, p: int) -> bool:
    return to_rational(x).denominator % p != 0


def series_p_integral(f: Series, p: int) -> Optional[int]:
    """Smallest index whose coefficient has p in its denominator, else None."""
    for k, c in enumerate(f.coeffs):
        if c.denominator % p == 0:
            return k
    return None


def _first_not_divisible(f: Series, p: int, start: int = 0) -> Optional[int]:
    # first k >= start with padic_val(f_k) < 1
    for k in range(start, f.order):
        c = f[k]
        if c and (c.denominator % p == 0 or c.numerator % p != 0):
            return k
    return None


def _check_prime(x: Rational, p: int) -> None:
    if x.denominator % p == 0:
        raise BadPrime(f"{p} divides the denominator of {format_rational(x)}")


def dwork_op(x, p: int) -> Rational:
    """The Dwork operator ``(x + x0)/p``, via ``(p^-1 x1 mod x2)/x2``."""
    x = to_rational(x)
    _check_prime(x, p)
    x1, x2 = int(x.numerator), int(x.denominator)
    return mpq(pow(p, -1, x2) * x1 % x2, x2)


def dwork_op_by_search(x, p: int) -> Rational:
    """Reference form: scan ``x0 = 0..p-1`` for the p-integral ``(x + x0)/p``."""
    x = to_rational(x)
    _check_prime(x, p)
    for x0 in range(p):
        y = (x + x0) / p
        if y.denominator % p:
            return y
    raise AssertionError("unreachable for p-integral x")


def dwork_image(a, p: int) -> HGParams:
    a = as_params(a)
    for x in a:
        _check_prime(x, p)
    return HGParams([dwork_op(x, p) for x in a])


def condition_check(a, p: int) -> bool:
    """Whether the Dwork operator at ``p`` fixes the parameter multiset.

    For two parameters the reflected multiset ``{1 - a_1, 1 - a_2}`` is also
    accepted.
    """
    a = as_params(a)
    image = dwork_image(a, p)
    if image == a:
        return True
    return a.n == 2 and image == a.reflect()


def dieudonne_test(f: Series, p: int) -> Optional[int]:
    """Check ``f(z^p) / f(z)^p in 1 + p Z_p[[z]]`` up to ``order(f)``.

    Returns the smallest index where the quotient minus 1 is not divisible
    by p, or None.
    """
    if not f.order or f[0] != 1:
        raise BadConstantTerm("need f(0) = 1")
    if f.order < p:
        raise ValueError(f"order {f.order} < p = {p}")
    g = f.subs_power(p).truncate(f.order) * pow_alpha(f, -p)
    return _first_not_divisible(g - 1, p, start=1)


def dwork_theorem_check(a, p: int, order: int) -> Optional[int]:
    """Self-test of ``(G/F)(delta_p a | z^p) == p (G/F)(a | z) mod p``.

    This congruence always holds, so a failure index points at a bug.
    """
    a = as_params(a)
    if order < p:
        raise ValueError(f"order {order} < p = {p}")
    image = dwork_image(a, p)
    lhs = ratio_GF(image, order).subs_power(p).truncate(order)
    return _first_not_divisible(lhs - ratio_GF(a, order) * p, p)


def fast_congruence(a, p: int, order: int) -> Optional[int]:
    """First index where ``(G/F)(delta_p a) - (G/F)(a)`` is not 0 mod p.

    A failure certifies that ``q(a|z)`` is not p-integral.
    """
    a = as_params(a)
    image = dwork_image(a, p)
    if image == a:
        return None
    return _first_not_divisible(ratio_GF(image, order) - ratio_GF(a, order), p)


def congruence_is_equality(a, p: int, order: int) -> bool:
    """Whether ``(G/F)(delta_p a)`` and ``(G/F)(a)`` agree exactly to ``order``."""
    a = as_params(a)
    image = dwork_image(a, p)
    return image == a or ratio_GF(image, order) == ratio_GF(a, order)


def prime_in_class(c: int, r: int, bound: int) -> int:
    """Smallest prime ``p <= bound`` with ``p * r == 1 (mod c)``."""
    if math.gcd(r, c) != 1:
        raise ValueError(f"residue {r} is not a unit mod {c}")
    p = 2
    while p <= bound:
        if (p * r - 1) % c == 0:
            return p
        p = int(gmpy2.next_prime(p))
    raise NotFound(f"no prime p <= {bound} with p^-1 = {r} mod {c}")


def _split_denominator(x: Rational, q: int) -> tuple[int, int]:
    den = int(x.denominator)
    y = 0
    while den % q == 0:
        den //= q
        y += 1
    return den, y


def dwork_structure_witness(x, item: int, q: Optional[int] = None,
                            m: Optional[int] = None, bound: int = 10_000):
    """Find a prime in the residue class of one of the four structural cases
    for the Dwork operator and check ``delta_p(x)`` has the predicted form.

    With ``x = t / (s q^y)`` (``q`` prime, ``gcd(q, s) = 1``):

    1. ``p^-1 = -1 mod s q^y``: ``delta_p(x) = 1 - x``
    2. ``y = 0``, ``p^-1 = q mod s``: ``qx - i``, ``0 <= i <= q - 1``
    3. ``p^-1 = s + q mod s q^y``: ``qx + r/q^y - i``, ``0 <= r < q^y``,
       ``0 <= i <= q``
    4. ``y >= 1``, ``0 <= m <= y``, ``p^-1 = 1 + q^(y-m) s mod s q^y``:
       ``x`` or ``x + r/q^m - i``, ``1 <= r < q^m``, ``i in {0, 1}``

    Returns ``(p, delta_p(x))``; raises FormViolation if the image has none
    of the allowed forms.
    """
    x = to_rational(x)
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    if item == 1:
        den = int(x.denominator)
        p = prime_in_class(den, den - 1, bound)
        d = dwork_op(x, p)
        allowed = [1 - x]
    else:
        if q is None or not gmpy2.is_prime(q):
            raise ValueError("items 2-4 need a prime q")
        s, y = _split_denominator(x, q)
        if item == 2:
            if y:
                raise ValueError("item 2 needs q not dividing the denominator")
            p = prime_in_class(s, q % s, bound)
            d = dwork_op(x, p)
            allowed = [q * x - i for i in range(q)]
        elif item == 3:
            mod = s * q ** y
            p = prime_in_class(mod, (s + q) % mod, bound)
            d = dwork_op(x, p)
            allowed = [q * x + mpq(r, q ** y) - i
                       for r in range(q ** y) for i in range(q + 1)]
        elif item == 4:
            if y < 1:
                raise ValueError("item 4 needs q dividing the denominator")
            if m is None or not 0 <= m <= y:
                raise ValueError(f"item 4 needs 0 <= m <= {y}")
            mod = s * q ** y
            p = prime_in_class(mod, (1 + q ** (y - m) * s) % mod, bound)
            d = dwork_op(x, p)
            allowed = [x] + [x + mpq(r, q ** m) - i
                             for r in range(1, q ** m) for i in (0, 1)]
        else:
            raise ValueError("item must be 1, 2, 3 or 4")
    if d not in allowed:
        raise FormViolation(
            f"delta_{p}({format_rational(x)}) = {format_rational(d)} "
            f"has none of the forms of item {item}")
    return p, d


@dataclass(frozen=True)
class IntegralityReport:
    """Verdicts for one (parameters, prime) cell."""

    params: HGParams
    p: int
    condition_holds: bool
    q_p_integral_to_order: int
    fast_congruence_first_failure: Optional[int]
    checked_order: int

    @property
    def q_integral(self) -> bool:
        return self.q_p_integral_to_order >= self.checked_order

    @property
    def consistent(self) -> bool:
        """Whether the verdicts agree with each other as the theory requires."""
        return self.q_integral or not self.condition_holds

    def to_dict(self) -> dict:
        return {
            "params": str(self.params),
            "prime": self.p,
            "condition": self.condition_holds,
            "q_integral_to": self.q_p_integral_to_order,
            "fast_congruence_failure": self.fast_congruence_first_failure,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def integrality_report(a, p: int, order: int) -> IntegralityReport:
    """Run the condition, q-integrality and fast-congruence checks at ``p``.

    ``q(a|z)`` is computed through ``z**order``; the integrality field is the
    number of leading coefficients that are p-integral.
    """
    a = as_params(a)
    cond = condition_check(a, p)
    q = mirror_q(a, order)
    fail = series_p_integral(q, p)
    return IntegralityReport(
        params=a,
        p=p,
        condition_holds=cond,
        q_p_integral_to_order=q.order if fail is None else fail,
        fast_congruence_first_failure=fast_congruence(a, p, order),
        checked_order=q.order,
    )
