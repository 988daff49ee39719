"""
The quintic mirror map and its instanton numbers
================================================

Build the holomorphic and logarithmic solutions for a = (1/5, 2/5, 3/5, 4/5),
rescale by N = 5^5, invert the mirror map and read off the first few
instanton numbers from the Yukawa coupling.
"""

from mirrorlab import instanton_numbers, n_constant, series_F, yukawa
from mirrorlab.modular import integrality_suite, q_of_z, quintic_case, z_of_q
from mirrorlab.series import format_rational, rescale

case = quintic_case()
print("N =", n_constant(case.a))

# F(Nz) is the generating series of (5k)!/k!^5
F = rescale(series_F(case.a, 6), case.N)
print("F(Nz):", [format_rational(c) for c in F])

# the mirror map and its inverse, both with integer coefficients
print("q(z):", [format_rational(c) for c in q_of_z(case, 5)])
print("z(q):", [format_rational(c) for c in z_of_q(case, 5)])

suite = integrality_suite(case, 16, 8)
print("u_0..u_6 integral in q through q^7:", suite.ok)

Y = yukawa(case, 8)
print("Yukawa:", [format_rational(c) for c in Y])
for d, n in enumerate(instanton_numbers(Y, 7), start=1):
    print(f"n_{d} = {format_rational(n)}")
