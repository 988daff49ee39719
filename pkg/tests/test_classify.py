import json
import math
import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from sympy import primerange

from mirrorlab.classify import (
    ClassificationEntry,
    enumerate_candidates,
    enumerate_n2,
    enumerated_multisets,
    expand_representatives,
    genfun_coeffs,
    is_reflection_closed,
    phi,
    phi_partitions,
    representatives,
    table1_diff,
    table1_multisets,
    triangle_type,
)
from mirrorlab.dwork import condition_check, prime_in_class
from mirrorlab.errors import NotTriangle
from mirrorlab.hypergeom import HGParams

F = Fraction


def _phi_oracle(m):
    return sum(1 for j in range(1, m + 1) if math.gcd(j, m) == 1)


def test_phi_matches_direct_count():
    assert [phi(m) for m in range(1, 60)] == [_phi_oracle(m) for m in range(1, 60)]


def test_phi_partitions_examples():
    assert phi_partitions(1) == [(2,)]
    assert phi_partitions(2) == [(2, 2), (3,), (4,), (6,)]
    assert len(phi_partitions(4)) == 14
    assert phi_partitions(3) == [(2, 2, 2), (2, 3), (2, 4), (2, 6)]


def test_phi_partitions_bound_is_sufficient():
    # a far larger bound finds nothing new
    for n in range(1, 9):
        assert phi_partitions(n) == phi_partitions(n, modulus_bound=10 * n * n + 20)


def test_genfun_examples():
    assert genfun_coeffs(7) == [1, 28, 4, 14, 14, 40, 40]
    c = genfun_coeffs(7)
    assert c[1] - 24 == len(phi_partitions(2))
    assert c[3] == c[4] and c[5] == c[6]
    with pytest.raises(ValueError):
        genfun_coeffs(0)


def test_genfun_counts_match_enumeration():
    coeffs = genfun_coeffs(8)
    for n in range(1, 9):
        if n == 2:
            assert len(enumerate_n2(60)) == coeffs[1] == 28
        else:
            assert len(enumerate_candidates(n)) == coeffs[n - 1] == len(phi_partitions(n))


def test_odd_even_bijection():
    for ell in range(1, 4):
        even = {tuple(sorted((2,) + m)) for m in phi_partitions(2 * ell)}
        odd = set(phi_partitions(2 * ell + 1))
        assert even == odd
        odd_params = {e.params for e in enumerate_candidates(2 * ell + 1)}
        assert all(F(1, 2) in p for p in odd_params)


def test_even_entries_reflection_closed():
    for n in (4, 6, 8):
        for e in enumerate_candidates(n):
            assert is_reflection_closed(e.params)
            assert expand_representatives(e.representatives) == tuple(sorted(e.params))


def test_entries_satisfy_condition():
    for n in (3, 4, 5, 6):
        for e in enumerate_candidates(n):
            a = HGParams(e.params)
            assert sum(phi(m) for m in e.moduli) == n
            for p in primerange(2, 51):
                if a.is_good(p):
                    assert condition_check(a, p)


def test_random_non_entries_fail():
    rng = random.Random(1234)
    known = {n: set(enumerated_multisets(n)) for n in (2, 3, 4)}
    tested = 0
    while tested < 200:
        n = rng.choice((2, 3, 4))
        tup = []
        for _ in range(n):
            d = rng.randint(2, 12)
            tup.append(F(rng.randint(1, d - 1), d))
        a = HGParams(tup)
        if tuple(a) in known[n]:
            continue
        tested += 1
        assert any(not condition_check(a, p)
                   for p in primerange(2, 51) if a.is_good(p)), str(a)


def test_representatives_examples():
    assert representatives([F(1, 5), F(2, 5), F(3, 5), F(4, 5)]) == (F(2, 5), F(1, 5))
    assert representatives([F(1, 2)] * 4) == (F(1, 2), F(1, 2))
    assert representatives([F(1, 2)] * 3) == (F(1, 2), F(1, 2))


def test_entry_json():
    e = enumerate_candidates(4)[0]
    assert isinstance(e, ClassificationEntry)
    d = json.loads(e.to_json())
    assert set(d) == {"n", "moduli", "params", "representatives"}
    assert d["n"] == 4 and len(d["params"]) == 4


# -- n = 2 ---------------------------------------------------------------------------

def test_enumerate_n2_examples():
    pairs = enumerate_n2(60)
    assert len(pairs) == 28
    assert pairs[:4] == [(F(1, 2), F(1, 2)), (F(2, 3), F(1, 3)),
                         (F(3, 4), F(1, 4)), (F(5, 6), F(1, 6))]
    assert (F(5, 12), F(1, 12)) in pairs
    assert (F(2, 7), F(1, 7)) not in pairs
    with pytest.raises(ValueError):
        enumerate_n2(11)


def _brute_n2(D):
    """All pairs with denominators <= D, checked against one prime per unit class."""
    fracs = sorted({F(j, d) for d in range(2, D + 1) for j in range(1, d)})
    out = set()
    for y, x in combinations_with_replacement(fracs, 2):
        a = HGParams([x, y])
        c = a.c
        if all(condition_check(a, prime_in_class(c, pow(r, -1, c), 10 ** 6))
               for r in range(1, c) if math.gcd(r, c) == 1):
            out.add(tuple(sorted((x, y))))
    return out


def test_enumerate_n2_matches_unpruned_search():
    D = 14
    found = {tuple(sorted(pr)) for pr in enumerate_n2(60)
             if max(x.denominator for x in pr) <= D}
    assert found == _brute_n2(D)


def test_enumerate_n2_stable_in_bound():
    assert enumerate_n2(60) == enumerate_n2(90)


def test_table1_diffs_empty():
    for n, size in ((2, 28), (4, 14), (6, 40)):
        assert len(table1_multisets(n)) == size
        assert table1_diff(n) == ([], [])


# -- triangle groups -----------------------------------------------------------------

def test_triangle_type_examples():
    assert triangle_type(F(1, 2), F(1, 2)) == (math.inf, math.inf)
    assert triangle_type(F(2, 3), F(1, 3)) == (3, math.inf)
    assert triangle_type(F(3, 4), F(1, 4)) == (2, math.inf)
    assert triangle_type(F(5, 12), F(1, 12)) == (3, 2)


def test_triangle_type_inverts_parametrization():
    for pr in enumerate_n2(60):
        try:
            m1, m2 = triangle_type(*pr)
        except NotTriangle:
            continue
        inv = [0 if m == math.inf else F(1, m) for m in (m1, m2)]
        assert {F(1, 2) * (1 + inv[0] - inv[1]), F(1, 2) * (1 - inv[0] - inv[1])} == set(pr)


def test_triangle_type_errors():
    with pytest.raises(NotTriangle):
        triangle_type(F(2, 5), F(1, 5))
    with pytest.raises(ValueError):
        triangle_type(F(1, 5), F(2, 5))
