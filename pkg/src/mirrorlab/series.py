"""
Truncated formal power series over the rationals.

A :class:`Series` stores the coefficients of ``z**0 .. z**(order-1)``; the
coefficients from ``z**order`` on are unknown (not zero). Binary operations
return a result whose order is the minimum of the operands' orders.

Coefficients are ``gmpy2.mpq`` values, which GMP keeps in lowest terms.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import (
    BadConstantTerm,
    DivisionByNonUnit,
    NonNilpotentInner,
    NotReversible,
)

Rational = type(mpq())

ZERO = mpq(0)
ONE = mpq(1)


def to_rational(x) -> Rational:
    """Coerce ``x`` (int, str, Fraction, mpq) to an exact rational.

    Strings use the ``"p/q"`` or ``"p"`` form, with an optional leading
    ``-`` or ``−``.
    """
    if isinstance(x, Rational):
        return x
    if isinstance(x, str):
        s = x.strip().replace("−", "-")
        if not s or any(ch not in "0123456789-/+" for ch in s):
            raise ValueError(f"not a rational: {x!r}")
        return mpq(s)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return mpq(x)


def format_rational(x) -> str:
    x = to_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Series:
    """Immutable truncated power series with explicit truncation order."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "_c", tuple(to_rational(c) for c in coeffs))

    @classmethod
    def _raw(cls, coeffs: Sequence[Rational]) -> "Series":
        s = object.__new__(cls)
        object.__setattr__(s, "_c", tuple(coeffs))
        return s

    @classmethod
    def constant(cls, c, order: int) -> "Series":
        return cls._raw([to_rational(c)] + [ZERO] * (order - 1)) if order else cls._raw(())

    @classmethod
    def z(cls, order: int) -> "Series":
        """The identity series ``z`` truncated at ``order``."""
        return cls._raw([ZERO, ONE, *([ZERO] * (order - 2))][:order])

    @classmethod
    def from_json(cls, text: str) -> "Series":
        return cls(json.loads(text))

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def order(self) -> int:
        return len(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, k):
        return self._c[k]

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        head = ", ".join(format_rational(c) for c in self._c[:6])
        more = ", ..." if self.order > 6 else ""
        return f"Series([{head}{more}], order={self.order})"

    def to_json(self) -> str:
        return json.dumps([format_rational(c) for c in self._c])

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series._raw(self._c[:order])

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (``order`` if none is known)."""
        for k, c in enumerate(self._c):
            if c:
                return k
        return self.order

    # -- ring operations --------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Series):
            return other
        return Series.constant(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        return Series._raw([x + y for x, y in zip(self._c, other._c)])

    __radd__ = __add__

    def __neg__(self):
        return Series._raw([-x for x in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        return Series._raw([x - y for x, y in zip(self._c, other._c)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            c = to_rational(other)
            return Series._raw([c * x for x in self._c])
        return Series._raw(_cauchy(self._c, other._c, min(self.order, other.order)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Series):
            c = to_rational(other)
            return Series._raw([x / c for x in self._c])
        return Series._raw(_divide(self._c, other._c, min(self.order, other.order)))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise TypeError("only non-negative integer powers; use pow_alpha")
        if self.order and self[0] == 1:
            return pow_alpha(self, e)
        result = Series.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, inner: "Series") -> "Series":
        return compose(self, inner)

    # -- calculus ----------------------------------------------------------

    def theta(self) -> "Series":
        return theta(self)

    def derivative(self) -> "Series":
        """d/dz; the result has order ``order - 1``."""
        return Series._raw([k * self._c[k] for k in range(1, self.order)])

    def shift(self, k: int) -> "Series":
        """Multiply by ``z**k``; order grows by ``k``."""
        return Series._raw([ZERO] * k + list(self._c))

    def subs_power(self, d: int) -> "Series":
        """``f(z**d)``, known exactly up to order ``d * order``."""
        out = [ZERO] * (d * self.order)
        out[::d] = self._c
        return Series._raw(out)

    def exp(self) -> "Series":
        return exp_log(self, "exp")

    def log(self) -> "Series":
        return exp_log(self, "log")


def _cauchy(a, b, m):
    out = []
    for k in range(m):
        s = ZERO
        for i in range(k + 1):
            x = a[i]
            if x:
                s += x * b[k - i]
        out.append(s)
    return out


def _divide(a, b, m):
    if m == 0:
        return []
    b0 = b[0]
    if not b0:
        raise DivisionByNonUnit("divisor has zero constant term")
    out = []
    for k in range(m):
        s = a[k]
        for j in range(1, k + 1):
            y = b[j]
            if y:
                s -= y * out[k - j]
        out.append(s / b0)
    return out


def arith(f: Series, g: Series, op: str) -> Series:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two series."""
    try:
        fn = {"add": Series.__add__, "sub": Series.__sub__,
              "mul": Series.__mul__, "div": Series.__truediv__}[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    return fn(f, g)


def exp_log(f: Series, op: str) -> Series:
    """Formal exponential (needs ``f(0) == 0``) or logarithm (needs ``f(0) == 1``)."""
    m = f.order
    if op == "exp":
        if m and f[0]:
            raise BadConstantTerm("exp needs a zero constant term")
        # k h_k = sum_j j f_j h_{k-j}, from theta(h) = h theta(f)
        tf = [j * f[j] for j in range(m)]
        h = [ONE] if m else []
        for k in range(1, m):
            s = ZERO
            for j in range(1, k + 1):
                if tf[j]:
                    s += tf[j] * h[k - j]
            h.append(s / k)
        return Series._raw(h)
    if op == "log":
        if m and f[0] != 1:
            raise BadConstantTerm("log needs constant term 1")
        if m == 0:
            return f
        q = _divide([k * f[k] for k in range(m)], f.coeffs, m)
        return Series._raw([ZERO] + [q[k] / k for k in range(1, m)])
    raise ValueError(f"unknown op {op!r}")


def pow_alpha(f: Series, alpha) -> Series:
    """``f ** alpha = exp(alpha * log f)`` for rational ``alpha`` and ``f(0) == 1``.

    Uses the one-pass recurrence ``k h_k = sum_j ((alpha + 1) j - k) f_j h_{k-j}``
    obtained from ``f theta(h) = alpha h theta(f)``.
    """
    m = f.order
    if m and f[0] != 1:
        raise BadConstantTerm("pow_alpha needs constant term 1")
    alpha = to_rational(alpha)
    h = [ONE] if m else []
    a1 = alpha + 1
    for k in range(1, m):
        s = ZERO
        for j in range(1, k + 1):
            if f[j]:
                s += (a1 * j - k) * f[j] * h[k - j]
        h.append(s / k)
    return Series._raw(h)


def compose(f: Series, g: Series) -> Series:
    """``f(g(z))`` for ``g(0) == 0``, truncated to ``min(order(f), order(g))``."""
    m = min(f.order, g.order)
    if g.order and g[0]:
        raise NonNilpotentInner("inner series must have zero constant term")
    if m == 0:
        return Series._raw(())
    v = g.valuation()
    if v >= m:
        return Series.constant(f[0], m)
    if all(not c for c in g.coeffs[v + 1:m]):
        # monomial c z^v: place coefficients directly
        c = g[v]
        out = [ZERO] * m
        power = ONE
        for k in range(0, (m - 1) // v + 1):
            out[k * v] = f[k] * power
            power *= c
        return Series._raw(out)
    g = g.truncate(m)
    # Horner; only f_k with k*v < m can contribute
    top = min(f.order, (m - 1) // v + 1)
    acc = Series.constant(f[top - 1], m)
    for k in range(top - 2, -1, -1):
        acc = acc * g
        acc = Series._raw((acc[0] + f[k],) + acc.coeffs[1:])
    return acc


def revert(f: Series) -> Series:
    """Compositional inverse of ``f = f1 z + ...`` with ``f1 != 0``.

    Newton iteration ``g <- g - (f(g) - z) / f'(g)``, doubling the number of
    correct coefficients each step.
    """
    m = f.order
    if m < 2 or f[0] or not f[1]:
        raise NotReversible("need f(0) = 0 and f'(0) != 0")
    g = Series._raw([ZERO, 1 / f[1]])
    df = f.derivative()
    prec = 2
    while prec < m:
        old, prec = prec, min(2 * prec, m)
        g = Series._raw(g.coeffs + (ZERO,) * (prec - old))
        err = compose(f.truncate(prec), g) - Series.z(prec)
        # err vanishes below z^old; f'(g) only matters mod z^(prec-old)
        hi = Series._raw(err.coeffs[old:])
        corr = hi / compose(df.truncate(prec - old), g.truncate(prec - old))
        g = g - corr.shift(old)
    return g


def theta(f: Series) -> Series:
    """The Euler operator ``z d/dz``."""
    return Series._raw([k * c for k, c in enumerate(f.coeffs)])


def rescale(f: Series, c) -> Series:
    """``f(c z)``: coefficient ``k`` is multiplied by ``c**k``."""
    c = to_rational(c)
    out = []
    power = ONE
    for x in f.coeffs:
        out.append(x * power)
        power *= c
    return Series._raw(out)
