"""
N-rescaled integral structures for the fourteen hypergeometric Calabi-Yau
cases: the rescaling constant N, the series u_0 .. u_6, the Yukawa coupling
and its instanton numbers.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from sympy import factorint

from .classify import expand_representatives, load_table1, phi, totatives
from .errors import IncompleteOrbit
from .hypergeom import HGParams, as_params, mirror_q, series_F, series_G
from .series import ONE, ZERO, Series, format_rational, rescale, revert, theta, to_rational


def n_factor(s: int) -> int:
    """``N_s = s^m prod_{p | s} p^(m/(p-1))`` with ``m = phi(s)``."""
    m = phi(s)
    out = s ** m
    for p in factorint(s):
        out *= p ** (m // (p - 1))
    return out


def n_constant(a) -> int:
    """Rescaling constant making ``F(Nz)`` integral.

    Parameters sharing a denominator ``s`` must form whole totative sets
    (possibly repeated ``c`` times); they contribute ``N_s^c``.
    """
    a = as_params(a)
    by_den: dict[int, Counter] = {}
    for x in a:
        by_den.setdefault(int(x.denominator), Counter())[x] += 1
    n = 1
    for s, counts in sorted(by_den.items()):
        full = totatives(s)
        reps = set(counts.values())
        if set(counts) != set(full) or len(reps) != 1:
            raise IncompleteOrbit(f"parameters with denominator {s} are not whole totative sets")
        n *= n_factor(s) ** reps.pop()
    return n


def is_integral_series(f: Series) -> Optional[int]:
    """First index with a non-integer coefficient, or None."""
    for k, c in enumerate(f.coeffs):
        if c.denominator != 1:
            return k
    return None


def minimality_probe(a, N: Optional[int] = None, order: int = 30) -> dict:
    """For each prime ``l | N``, whether ``N/l`` still makes ``F`` integral to ``order``."""
    a = as_params(a)
    N = n_constant(a) if N is None else N
    F = series_F(a, order)
    return {l: is_integral_series(rescale(F, N // l)) is None for l in sorted(factorint(N))}


def _table1_n4_params() -> list[HGParams]:
    return [HGParams(expand_representatives(row)) for row in load_table1()["blocks"]["4"]]


QUINTIC = HGParams("1/5,2/5,3/5,4/5")


@dataclass(frozen=True)
class CYCase:
    """One of the fourteen cases: parameters, rescaling N and Yukawa normalization n0.

    Only the quintic ships with its n0 (5); other cases default to n0 = 1,
    i.e. instanton numbers per unit n0.
    """

    a: HGParams
    N: int = 0
    n0: int = 1
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", as_params(self.a))
        if not self.N:
            object.__setattr__(self, "N", n_constant(self.a))
        if not self.name:
            object.__setattr__(self, "name", str(self.a))

    @classmethod
    def from_config(cls, cfg: dict) -> "CYCase":
        """Build from ``{"params": "1/5,2/5,3/5,4/5", "n0": 5, "N": "auto"}``."""
        a = HGParams(cfg["params"])
        N = cfg.get("N", "auto")
        N = 0 if N in ("auto", None) else int(N)
        n0 = cfg.get("n0")
        if n0 is None:
            n0 = 5 if a == QUINTIC else 1
        return cls(a, N, int(n0), cfg.get("name", ""))


def table1_cases() -> list[CYCase]:
    return [CYCase(a, n0=5 if a == QUINTIC else 1) for a in _table1_n4_params()]


def quintic_case() -> CYCase:
    return CYCase(QUINTIC, 3125, 5, "quintic")


def _FG_rescaled(case: CYCase, order: int):
    return rescale(series_F(case.a, order), case.N), rescale(series_G(case.a, order), case.N)


def u_series(case: CYCase, order: int) -> list[Series]:
    """``[u_0, ..., u_6]`` at argument ``Nz``.

    u_0 = z, u_1..u_4 = theta^0..theta^3 of F, u_5 = F thG - G thF,
    u_6 = F th^2 G - G th^2 F; so ``u_5 / u_1^2 = theta(G/F)``.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    F, G = _FG_rescaled(case, order)
    tF, tG = theta(F), theta(G)
    ttF, ttG = theta(tF), theta(tG)
    return [Series.z(order), F, tF, ttF, theta(ttF), F * tG - G * tF, F * ttG - G * ttF]


def q_of_z(case: CYCase, order: int) -> Series:
    """``(1/N) q(a | N z)`` through ``z**order`` (series order ``order + 1``)."""
    return rescale(mirror_q(case.a, order), case.N) / case.N


def z_of_q(case: CYCase, order: int) -> Series:
    """Inverse of :func:`q_of_z`, of series order ``order + 1``."""
    return revert(q_of_z(case, order))


@dataclass
class IntegralitySuite:
    case: CYCase
    order_q: int
    q_of_z_failure: Optional[int]
    z_of_q: Series
    failures: dict  # name -> first non-integral q-index or None

    @property
    def ok(self) -> bool:
        return self.q_of_z_failure is None and all(v is None for v in self.failures.values())

    def to_dict(self) -> dict:
        return {
            "order_q": self.order_q,
            "q_of_z_failure": self.q_of_z_failure,
            "failures": self.failures,
            "ok": self.ok,
        }


def integrality_suite(case: CYCase, order_z: int, order_q: int) -> IntegralitySuite:
    """Transport ``u_0 .. u_6`` to the q-coordinate and check integrality
    of every coefficient below ``q**order_q``."""
    if order_z < 2 * order_q:
        raise ValueError("order_z must be >= 2 * order_q")
    qz = q_of_z(case, order_z)
    zq = revert(qz)
    us = u_series(case, order_z)
    zq_short = zq.truncate(order_q)
    failures = {"u0": is_integral_series(zq_short)}
    for i, u in enumerate(us[1:], start=1):
        failures[f"u{i}"] = is_integral_series(u.truncate(order_q)(zq_short))
    return IntegralitySuite(case, order_q, is_integral_series(qz.truncate(order_q)), zq, failures)


def yukawa_z(case: CYCase, order: int) -> Series:
    """``n0 u1^4 / ((u5 + u1^2)^3 (1 - N z))`` in the rescaled coordinate."""
    us = u_series(case, order)
    u1, u5 = us[1], us[5]
    disc = Series([1, -case.N] + [0] * (order - 2))
    return (u1 ** 4 * case.n0) / ((u5 + u1 * u1) ** 3 * disc)


def yukawa(case: CYCase, order_q: int) -> Series:
    """The Yukawa coupling as a q-series (coefficients of ``q^0 .. q^(order_q-1)``)."""
    if order_q < 1:
        raise ValueError("order_q must be >= 1")
    order = max(order_q, 2)
    Y = yukawa_z(case, order)
    return Y(z_of_q(case, order).truncate(order)).truncate(order_q)


def instanton_numbers(Y: Series, dmax: int) -> list:
    """Invert ``Y = n0 + sum n_d d^3 q^d / (1 - q^d)`` for ``n_1 .. n_dmax``.

    Values are returned as exact rationals; a non-integer is reported as is.
    """
    if Y.order <= dmax:
        raise ValueError(f"need order > {dmax}, got {Y.order}")
    ns = [ZERO] * (dmax + 1)
    for k in range(1, dmax + 1):
        s = Y[k]
        for d in range(1, k):
            if k % d == 0:
                s -= ns[d] * d ** 3
        ns[k] = s / k ** 3
    return ns[1:]


def lambert_series(n0, ns, order: int) -> Series:
    """``n0 + sum_d n_d d^3 q^d / (1 - q^d)`` truncated at ``order``."""
    out = [ZERO] * order
    if order:
        out[0] = to_rational(n0)
    for d, nd in enumerate(ns, start=1):
        w = to_rational(nd) * d ** 3
        for k in range(d, order, d):
            out[k] += w
    return Series(out)


def case_report(case: CYCase, order_q: int, dmax: int, integrality_order: int = 6) -> dict:
    Y = yukawa(case, order_q)
    suite = integrality_suite(case, 2 * integrality_order, integrality_order)
    return {
        "case": str(case.a),
        "N": case.N,
        "n0": case.n0,
        "instantons": [format_rational(x) for x in instanton_numbers(Y, dmax)],
        "integrality": suite.to_dict(),
    }


def case_report_json(case: CYCase, order_q: int, dmax: int, integrality_order: int = 6) -> str:
    return json.dumps(case_report(case, order_q, dmax, integrality_order), sort_keys=True)
