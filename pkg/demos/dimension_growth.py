"""
Filtration dimensions and the holonomic bounds
==============================================

dim F_i z for cyclic generators, the M'_i series of R_f, and the length
bound n! C they produce.
"""

from math import comb

from hasse_dmod import (
    LocalizedContext,
    Polynomial,
    build_report,
    cyclic_filtration_dims,
    degree_filtration_dims,
    holonomy_constant,
    length_bound,
    make_field,
    mf_filtration_dims,
    multiplicity_series,
)
from hasse_dmod.filtration import FractionSpace

QQ = make_field(0)

# F_i (1/x) in R_x grows like 2i + 1
ctx = LocalizedContext(Polynomial.parse("x1", 1, QQ))
series = cyclic_filtration_dims(ctx.fraction(1, 1), FractionSpace(ctx, 7), 6)
print("F_i(1/x):", series.dims)
print(build_report(series).to_csv())

# R and R_x: constants 2 and 3, so lengths at most 2 and 3
for name, s in (("R", degree_filtration_dims(1, QQ, 6)), ("R_x", mf_filtration_dims(ctx, 6))):
    C = holonomy_constant(s)
    print(f"{name}: dims {s.dims}, C = {C}, length <= {length_bound(C, 1)}")
    print("   multiplicities", [str(m) for m in multiplicity_series(s)])

# plane curve x1 x2 + 1 over F_5: dim M'_i = C(2 + 3i, 2)
F5 = make_field(5)
ctx2 = LocalizedContext(Polynomial.parse("x1*x2 + 1", 2, F5))
s2 = mf_filtration_dims(ctx2, 3)
print("M'_i:", s2.dims, [comb(2 + 3 * i, 2) for i in range(4)])
