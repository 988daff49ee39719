"""
Enumeration of the parameter tuples whose mirror maps are conjecturally
N-integral.

For n != 2 a tuple qualifies iff the Dwork operator permutes it for every
good prime, which forces it to be a union of full totative orbits
``{j/m : gcd(j, m) = 1}``. Such unions correspond to multisets of moduli
``{m_1, ..., m_k}`` with ``phi(m_1) + ... + phi(m_k) = n``. For n = 2 the
reflected pair ``{1 - a_1, 1 - a_2}`` is also allowed and the tuples are
found by a bounded search instead.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from gmpy2 import mpq
from sympy import primerange, totient

from .dwork import condition_check
from .errors import NotTriangle
from .hypergeom import HGParams
from .series import format_rational, to_rational

HALF = mpq(1, 2)


@lru_cache(maxsize=None)
def phi(m: int) -> int:
    return int(totient(m))


def totatives(m: int) -> list:
    return [mpq(j, m) for j in range(1, m) if math.gcd(j, m) == 1]


def phi_partitions(n: int, modulus_bound: int | None = None) -> list[tuple[int, ...]]:
    """All multisets ``{m_i > 1}`` with ``sum phi(m_i) == n``.

    Each multiset is a non-decreasing tuple; the list is sorted. The default
    modulus bound ``2 n^2`` is safe because ``phi(m) >= sqrt(m/2)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    bound = 2 * n * n if modulus_bound is None else modulus_bound
    moduli = [m for m in range(2, bound + 1) if phi(m) <= n]
    out = []

    def extend(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(moduli)):
            m = moduli[i]
            if phi(m) <= remaining:
                acc.append(m)
                extend(i, remaining - phi(m), acc)
                acc.pop()

    extend(0, n, [])
    return sorted(out)


def genfun_coeffs(terms: int) -> list[int]:
    """Coefficients of ``x^1 .. x^terms`` in ``24x^2 - 1 + prod_{m>=2} 1/(1 - x^phi(m))``."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    dp = [1] + [0] * terms
    for m in range(2, 2 * terms * terms + 1):
        w = phi(m)
        if w > terms:
            continue
        for k in range(w, terms + 1):
            dp[k] += dp[k - w]
    dp[0] -= 1
    if terms >= 2:
        dp[2] += 24
    return dp[1:]


def representatives(params) -> tuple:
    """Elements in (0, 1/2] standing for a multiset closed under ``x -> 1 - x``.

    Halves are split evenly between a representative and its mirror image
    (rounded up for an odd count). Sorted in decreasing order.
    """
    params = [to_rational(x) for x in params]
    lows = [x for x in params if x < HALF]
    halves = sum(1 for x in params if x == HALF)
    return tuple(sorted(lows + [HALF] * ((halves + 1) // 2), reverse=True))


def expand_representatives(reps) -> tuple:
    """Inverse of :func:`representatives` for even-sized multisets."""
    reps = [to_rational(x) for x in reps]
    return tuple(sorted(reps + [1 - x for x in reps]))


def is_reflection_closed(params) -> bool:
    params = sorted(to_rational(x) for x in params)
    return params == sorted(1 - x for x in params)


@dataclass(frozen=True)
class ClassificationEntry:
    n: int
    moduli: tuple
    params: tuple
    representatives: tuple

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "moduli": list(self.moduli),
            "params": [format_rational(x) for x in self.params],
            "representatives": [format_rational(x) for x in self.representatives],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _good_primes(params: HGParams, bound: int = 50):
    return [p for p in primerange(2, bound + 1) if params.is_good(p)]


def enumerate_candidates(n: int, verify_bound: int = 50) -> list[ClassificationEntry]:
    """One entry per phi-partition of ``n`` (``n != 2``).

    Every entry is checked against the Dwork condition for all good primes
    up to ``verify_bound``.
    """
    if n == 2:
        raise ValueError("n = 2 admits the reflected branch; use enumerate_n2")
    entries = []
    for moduli in phi_partitions(n):
        params = tuple(sorted(x for m in moduli for x in totatives(m)))
        hg = HGParams(params)
        bad = [p for p in _good_primes(hg, verify_bound) if not condition_check(hg, p)]
        if bad:
            raise RuntimeError(f"orbit union {moduli} fails the Dwork condition at p={bad[0]}")
        entries.append(ClassificationEntry(n, moduli, params, representatives(params)))
    return entries


def _pair_closed(x, y) -> bool:
    c = math.lcm(int(x.denominator), int(y.denominator))
    pair = sorted((x, y))
    mirror = sorted((1 - x, 1 - y))
    for r in range(1, c):
        if math.gcd(r, c) != 1:
            continue
        image = sorted(mpq(r * x.numerator % x.denominator, x.denominator)
                       for x in (x, y))
        if image != pair and image != mirror:
            return False
    return True


def enumerate_n2(denominator_bound: int = 60) -> list[tuple]:
    """Pairs ``(a1 >= a2)`` with denominators ``<= D`` whose Dwork image is
    the pair itself or its reflection for every good prime.

    Pairs with ``a1 + a2 = 1`` come first, then the rest by common
    denominator.

    The image of ``a1`` under all unit classes is its whole totative orbit,
    which must fit inside ``{a1, a2, 1-a1, 1-a2}``; so only denominators with
    ``phi <= 4`` are scanned.
    """
    if denominator_bound < 12:
        raise ValueError("denominator bound must be >= 12")
    fracs = [x for d in range(2, denominator_bound + 1) if phi(d) <= 4
             for x in totatives(d)]
    fracs.sort()
    pairs = []
    for i, y in enumerate(fracs):
        for x in fracs[i:]:
            if _pair_closed(x, y):
                pairs.append((x, y))
    return sorted(pairs, key=_n2_order)


def _n2_order(pr):
    # pairs equal to their own reflection (single orbits) first, then by lcm
    x, y = pr
    return (x + y != 1, math.lcm(int(x.denominator), int(y.denominator)), pr)


def n2_entries(denominator_bound: int = 60) -> list[ClassificationEntry]:
    return [
        ClassificationEntry(2, tuple(sorted({int(x.denominator) for x in pr})),
                            tuple(sorted(pr)), pr)
        for pr in enumerate_n2(denominator_bound)
    ]


def triangle_type(a1, a2):
    """``(m1, m2)`` with ``a1 - a2 = 1/m1`` and ``1 - a1 - a2 = 1/m2``.

    A zero difference gives ``math.inf``.
    """
    a1, a2 = to_rational(a1), to_rational(a2)
    if a1 < a2:
        raise ValueError("need a1 >= a2")
    out = []
    for d in (a1 - a2, 1 - a1 - a2):
        if d == 0:
            out.append(math.inf)
            continue
        m = 1 / d
        if m <= 0 or m.denominator != 1:
            raise NotTriangle(f"1/{format_rational(d)} is not a positive integer")
        out.append(int(m))
    return tuple(out)


def load_table1() -> dict:
    text = resources.files("mirrorlab").joinpath("data/table1.json").read_text()
    return json.loads(text)


def table1_multisets(n: int) -> list[tuple]:
    """Reference-table rows for ``n`` as canonical sorted multisets of parameters."""
    rows = load_table1()["blocks"][str(n)]
    if n == 2:
        return [tuple(sorted(to_rational(x) for x in row)) for row in rows]
    return [expand_representatives(row) for row in rows]


def enumerated_multisets(n: int, denominator_bound: int = 60) -> list[tuple]:
    if n == 2:
        return [e.params for e in n2_entries(denominator_bound)]
    return [e.params for e in enumerate_candidates(n)]


def table1_diff(n: int, denominator_bound: int = 60) -> tuple[list, list]:
    """``(missing, extra)`` multisets between the enumeration and the reference table."""
    fixture = sorted(table1_multisets(n))
    found = sorted(enumerated_multisets(n, denominator_bound))
    missing = _multiset_difference(fixture, found)
    extra = _multiset_difference(found, fixture)
    return missing, extra


def _multiset_difference(a, b):
    rest = list(b)
    out = []
    for x in a:
        if x in rest:
            rest.remove(x)
        else:
            out.append(x)
    return out
