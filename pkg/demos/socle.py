"""
The module D/Dm at a rational point
===================================

Every nonzero element can be pushed back onto the class of 1.
"""

from hasse_dmod import DiffOp, QuotientElem, RationalPoint, annihilator_power, left_act, make_field
from hasse_dmod import reduce_mod_Dm, socle_multiplier

QQ = make_field(0)
pt = RationalPoint.origin(2, QQ)

# x1 D_(1,1) is -1 modulo D m
print(reduce_mod_Dm(DiffOp.parse("x1*D[1,1]", 2, QQ), pt))

z = QuotientElem(2, QQ, {(2, 1): 3, (0, 3): 1, (1, 0): -4})
print("z =", z)

# a monomial x^t bringing z down to a multiple of 1bar
t, lam = socle_multiplier(z)
print("x^t with t =", t, "gives", left_act(DiffOp.monomial(t, (0, 0), QQ), z, pt), "; lambda =", lam)

# the least N with m^N z = 0
print("annihilated by m^N for N =", annihilator_power(z, pt))

# the same computation away from the origin
pt2 = RationalPoint((3, -1), QQ)
print(reduce_mod_Dm(DiffOp.parse("(x1 - 3)*D[1,1]", 2, QQ), pt2))
