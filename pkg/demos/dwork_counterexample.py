"""
When the Dwork condition fails late
===================================

For a = (169/330, 139/330) and p = 101 the Dwork operator moves the
parameters, yet the first hundred coefficients of the mirror map are
101-integral. The congruence between G/F at a and at its Dwork image
already fails at z^2, which is the cheap way to see the failure.
"""

from mirrorlab import HGParams, condition_check, fast_congruence, mirror_q, series_p_integral
from mirrorlab.dwork import dwork_image

a, p = HGParams("169/330,139/330"), 101
print("image under delta_p:", dwork_image(a, p))
print("condition holds:", condition_check(a, p))
print("congruence first fails at index", fast_congruence(a, p, 10))

# the denominator 101 only shows up far out
q = mirror_q(a, 220)
print("first non-integral coefficient of q:", series_p_integral(q, p))

# compare with a case where the condition holds at every good prime
quintic = HGParams("1/5,2/5,3/5,4/5")
q5 = mirror_q(quintic, 120)
for ell in (2, 3, 7, 11, 13, 101):
    print(f"quintic, p={ell}: condition={condition_check(quintic, ell)}, "
          f"integral to 120: {series_p_integral(q5, ell) is None}")
