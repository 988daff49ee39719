"""
Counting tuples with integral mirror maps
=========================================

Unions of totative orbits {j/m : gcd(j, m) = 1} are exactly the parameter
tuples fixed by every Dwork operator. Counting them by size gives a simple
generating function; for n = 2 the reflected pairs add 24 more.
"""

from mirrorlab import enumerate_candidates, enumerate_n2, genfun_coeffs, triangle_type
from mirrorlab.classify import table1_diff
from mirrorlab.series import format_rational


def show(pair):
    return "(" + ", ".join(format_rational(x) for x in pair) + ")"


print("counts by n:", genfun_coeffs(8))

for e in enumerate_candidates(4):
    print(e.moduli, show(e.representatives))

# n = 2 and the triangle groups (m1, m2, oo) they come from
for pair in enumerate_n2(60):
    try:
        print(show(pair), "type", triangle_type(*pair))
    except ValueError:
        print(show(pair), "not of triangle type")

for n in (2, 4, 6):
    missing, extra = table1_diff(n)
    print(f"n={n}: missing {len(missing)}, extra {len(extra)}")
