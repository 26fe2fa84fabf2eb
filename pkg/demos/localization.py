"""
The module R_f
==============

Fractions m/f^j, acted on by divided powers, and the filtration M'_j.
"""

from hasse_dmod import LocalizedContext, Polynomial, frac_act, in_filtration_level, make_field

for p in (0, 2, 5):
    k = make_field(p)
    ctx = LocalizedContext(Polynomial.parse("x1", 1, k))
    u = ctx.fraction(1, 1)
    # D_t(1/x) = (-1)^t / x^(t+1); the sign is invisible over F_2
    print(k, [str(frac_act(t, 1, u)) for t in range(5)])

# a curve in the plane
QQ = make_field(0)
ctx = LocalizedContext(Polynomial.parse("x1*x2 + 1", 2, QQ))
u = ctx.parse("x2/f^1")
for t in range(1, 4):
    v = frac_act(t, 1, u)
    # D_t raises the filtration level by t at most
    print(f"D[1,{t}](x2/f) = {v}   in M'_{1 + t}: {in_filtration_level(v, 1 + t)}")
