"""
Isolated versus simple solutions
================================

Squaring an entry turns a simple root into a double one.  The default
filter keeps every isolated point, while ``simple=True`` keeps only the
points where the Jacobian has full rank.
"""
from detsolve import oracle_check, parse, solve

spec = parse("""
vars x y
matrix 1 2
x^2 | y
""")

iso = solve(spec, seed=3)
simple = solve(spec, seed=3, simple=True)
print("isolated:", iso.zdp.rational_points())
print("simple:  ", simple.zdp.rational_points())

# a brute-force scan over a small field sees the same point
res = oracle_check(spec, 101, seed=3)
print("oracle points over F_101:", res["oracle_points"])
print("solver output contained in oracle set:", res["contained"])
