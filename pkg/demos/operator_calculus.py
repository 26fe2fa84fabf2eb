"""
Divided-power operators on k[x1, x2]
====================================

Normal forms, composition and application, in characteristic 0 and p.
"""

from hasse_dmod import DiffOp, Polynomial, make_field, op_apply

QQ = make_field(0)
F2 = make_field(2)

# operators are written with D[i,t] for the order-t divided power in x_i
A = DiffOp.parse("D[1,1]*x1", 1, QQ)
print("D[1,1]*x1 =", A)

# D_1 D_1 = 2 D_2 in every characteristic, so it vanishes over F_2
print("D[1,1]^2 over QQ:", DiffOp.parse("D[1,1]*D[1,1]", 1, QQ))
print("D[1,1]^2 over F2:", DiffOp.parse("D[1,1]*D[1,1]", 1, F2))

# but D_2 itself is not zero over F_2: it sends x^2 to 1
D2 = DiffOp.D(2, 1, 1, F2)
print("D[1,2](x1^2) over F2:", op_apply(D2, Polynomial.parse("x1^2", 1, F2)))

# two variables: the operators for different x_i commute
B = DiffOp.parse("(x1 + x2)*D[2,1]*D[1,2]", 2, QQ)
g = Polynomial.parse("x1^3*x2^2 + 5*x2", 2, QQ)
print("B =", B)
print("B(g) =", op_apply(B, g))
