"""
Solving a small rank-deficiency problem
=======================================

Where does a 1 x 2 polynomial matrix lose rank, subject to one extra
equation?  The answer comes back as a parametrization of the solution set.
"""
from detsolve import parse, print_spec, solve


def signed(point, prime):
    # residues closer to the prime read better as negatives
    return tuple(c - prime if c > prime // 2 else c for c in point)


# one row, two columns, two unknowns: both entries must vanish together
spec = parse("""
vars x y
matrix 1 2
x^2 - 4 | y - x
""")
print(print_spec(spec))

report = solve(spec, seed=1)
print("mode:", report.mode_used, "bounds:", report.bounds)
print("w =", report.zdp.w)          # minimal polynomial of the linear form
print("v =", report.zdp.v)          # coordinates, as numerators over w'
print("rational points:", [signed(pt, report.prime) for pt in report.zdp.rational_points()])
print("checks:", report.checks)

# a 1 x 1 matrix plus one side equation also has two unknowns
spec = parse("""
vars x y
matrix 1 1
x^2 - 4
eq x + y - 1
""")
report = solve(spec, seed=1)
print("rational points:", [signed(pt, report.prime) for pt in report.zdp.rational_points()])
