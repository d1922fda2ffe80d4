"""
Column and row degree bounds
============================

The number of isolated solutions is bounded in terms of the column degrees
and, separately, the row degrees.  Either one can be the smaller.
"""
from detsolve import DegreeProfile, bounds

# 2 x 3 matrix in 2 unknowns, no side equations
# first row linear, second row cubic
uneven_rows = DegreeProfile(p=2, q=3, s=0, n=2, cdeg=(3, 3, 3), rdeg=(1, 3))
# one quartic column, the others linear
uneven_cols = DegreeProfile(p=2, q=3, s=0, n=2, cdeg=(4, 1, 1), rdeg=(4, 4))

for name, prof in [("uneven rows", uneven_rows), ("uneven cols", uneven_cols)]:
    b = bounds(prof)
    pick = "column" if b.c <= b.cprime else "row"
    print(f"{name:>12}: c = {b.c:3d}  c' = {b.cprime:3d}  -> {pick} start system")

# a side equation of degree d multiplies both bounds by d
with_eq = DegreeProfile(p=1, q=2, s=1, n=3, cdeg=(2, 2), rdeg=(2,), gdeg=(3,))
print(bounds(with_eq))
