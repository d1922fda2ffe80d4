"""Acceptance criteria, one test (and one printed PASS/FAIL line) each.

Every tolerance is pinned below.  Arithmetic is exact, so the only
tolerances are wall-clock budgets.  Run with ``pytest -s`` to see the lines.
"""
import random
import subprocess
import sys
import time
from itertools import product
from pathlib import Path

import pytest

from detsolve import oracle
from detsolve.detstart import (
    DegreeProfile,
    bounds,
    build_column_start,
    column_degree,
    complete_sym,
    elem_sym,
    random_row_forms,
    row_degree,
    row_degree_diagonal,
)
from detsolve.field_linalg import FieldCtx, PrimeField
from detsolve.homotopy import (
    HomotopyInstance,
    decompose,
    endpoints,
    lift,
    reconstruct,
    run_isolated,
    run_simple,
)
from detsolve.localdim import is_isolated
from detsolve.solver import oracle_check, solve
from detsolve.zdp import from_points, residual, same_points

from helpers import BIG, P101, P1009, problem, prog

# pinned budgets (seconds) and counts
BOUNDS_BUDGET = 1e-3
COLUMN_START_BUDGET = 5.0
ROW_START_BUDGET = 10.0
END_TO_END_BUDGET = 60.0
MODE_AGREEMENT_BUDGET = 60.0
LOCALDIM_BUDGET = 10.0
MIN_END_TO_END = 10
MIN_LOCAL_IDEALS = 20
PROPERTY_CASES = 1000

TESTS = Path(__file__).parent


def report(number, ok, detail):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


# -- 1. bound formulas --

FIRST_GRID = DegreeProfile(3, 4, 0, 2, (2, 1, 5, 7), (7, 7, 7))
# the second grid of the worked example: rows of degrees (2, 1, 5), every column of degree 5
SECOND_GRID = DegreeProfile(3, 4, 0, 2, (5, 5, 5, 5), (2, 1, 5))


def _time_best(fn, repeats=20):
    best = float("inf")
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def test_criterion_1_bound_formulas():
    b1, b2 = bounds(FIRST_GRID), bounds(SECOND_GRID)
    elapsed = _time_best(lambda: (bounds(FIRST_GRID), bounds(SECOND_GRID)))
    ok = (elem_sym(2, (2, 1, 5, 7)) == 73 and b1.c == 73 and b1.cprime == 294
          and complete_sym(2, (2, 1, 5)) == 47 and b2.cprime == 47
          and elapsed < BOUNDS_BUDGET)
    report(1, ok, f"c={b1.c}, c'={b1.cprime}; second grid c'={b2.cprime}; "
                  f"{elapsed * 1e3:.3f} ms (< {BOUNDS_BUDGET * 1e3:.0f} ms)")
    assert ok


@pytest.mark.xfail(strict=True, reason="stated c = 294 for the second grid; E_2(5,5,5,5) = 150")
def test_criterion_1_second_grid_column_bound():
    c = bounds(SECOND_GRID).c
    report("1 (second grid c)", c == 294, f"c = E_2(5,5,5,5) = {c}, stated value 294")
    assert c == 294


# -- 2. column start counts --

COLUMN_PROFILES = [
    DegreeProfile(2, 3, 0, 2, (1, 2, 3), (3, 3)),
    DegreeProfile(1, 3, 1, 4, (2, 2, 1), (2,), (2,)),
    DegreeProfile(3, 5, 0, 3, (1, 1, 2, 1, 3), (3, 3, 3)),
    DegreeProfile(2, 4, 1, 4, (1, 2, 1, 1), (2, 2), (3,)),
    DegreeProfile(3, 4, 1, 3, (2, 3, 1, 2), (3, 3, 3), (2,)),
    DegreeProfile(1, 4, 1, 5, (3, 3, 2, 3), (3,), (3,)),
    DegreeProfile(1, 2, 0, 2, (3, 3), (3,)),
]


def test_criterion_2_column_start_counts():
    t = time.perf_counter()
    bad = []
    for seed in range(20):
        prof = COLUMN_PROFILES[seed % len(COLUMN_PROFILES)]
        start = build_column_start(prof, FieldCtx(BIG, seed).rng("acceptance", 2), BIG)
        want = bounds(prof).c
        if start.R0.degree != want:
            bad.append((seed, start.R0.degree, want))
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < COLUMN_START_BUDGET
    report(2, ok, f"20 seeds, |Z(R0)| = c on all but {len(bad)}; {elapsed:.2f} s (< {COLUMN_START_BUDGET:.0f} s)")
    assert ok, bad


# -- 3. row start counts --

ROW_CASES = [(pp, n, rd) for pp, rd in [(1, (3,)), (2, (1, 3)), (3, (1, 2, 3)), (2, (3, 3)),
                                        (3, (2, 2, 2)), (2, (2, 3)), (3, (3, 3, 3))]
             for n in (1, 2, 3)][:20]


def test_criterion_3_row_start_counts():
    t = time.perf_counter()
    bad = []
    for seed, (pp, n, rdeg) in enumerate(ROW_CASES):
        ctx = FieldCtx(BIG, seed)
        rng = ctx.rng("acceptance", 3)
        N = random_row_forms(rng, pp, n + pp - 1, n, rdeg, BIG)
        lam = tuple(int(x) for x in rng.integers(1, BIG, n))
        got = row_degree_diagonal(N, ctx, lam).degree
        if got != complete_sym(n, rdeg):
            bad.append((pp, n, rdeg, got))
    elapsed = time.perf_counter() - t
    ok = len(ROW_CASES) == 20 and not bad and elapsed < ROW_START_BUDGET
    report(3, ok, f"{len(ROW_CASES)} instances, |V_p(N)| = S_n(alpha) on all but {len(bad)}; "
                  f"{elapsed:.2f} s (< {ROW_START_BUDGET:.0f} s)")
    assert ok, bad


# -- 4. end-to-end solves against the enumeration oracle --

def _entry(rng, deg, shift=None):
    c = lambda: rng.randint(-9, 9)  # noqa: E731
    terms = [(rng.randint(1, 9), "x"), (c(), "y"), (c(), "1")]
    if deg == 2:
        terms += [(c(), "x^2"), (c(), "x*y"), (rng.randint(1, 9), "y^2")]
    text = " + ".join(f"{a}*{m}" for a, m in terms)
    if shift is None:
        return text, None
    x, y = shift
    val = sum(a * {"x": x, "y": y, "1": 1, "x^2": x * x, "x*y": x * y, "y^2": y * y}[m] for a, m in terms)
    return text, val


def end_to_end_instances():
    """Six random 2x3 problems and six with a planted rank-deficient point."""
    rng = random.Random(2024)
    out = []
    for k in range(12):
        degs = [[rng.choice([1, 2]) for _ in range(3)] for _ in range(2)]
        if k % 2 == 0:
            out.append(problem([[_entry(rng, d)[0] for d in row] for row in degs]))
            continue
        pt = (rng.randrange(P1009), rng.randrange(P1009))
        # F(pt) equals the rank-one matrix [u; t*u]
        u = [rng.randint(1, 9) for _ in range(3)]
        t = rng.randint(2, 9)
        rows = []
        for i, row in enumerate(degs):
            cells = []
            for j, d in enumerate(row):
                text, val = _entry(rng, d, pt)
                target = u[j] * (t if i else 1)
                cells.append(f"{text} + {(target - val) % P1009}")
            rows.append(cells)
        out.append(problem(rows))
    return out


def test_criterion_4_end_to_end():
    t = time.perf_counter()
    failures = []
    rational = 0
    specs = end_to_end_instances()
    for k, spec in enumerate(specs):
        rep = solve(spec, seed=k, prime=P1009)
        bd = rep.bounds
        check = oracle_check(spec, P1009, seed=k)
        rational += check["solver_rational"]
        if not (rep.checks["residual_zero"] and rep.zdp.degree <= min(bd.c, bd.cprime)
                and check["contained"] and not check["missing_simple"]):
            failures.append(k)
    elapsed = time.perf_counter() - t
    ok = len(specs) >= MIN_END_TO_END and not failures and elapsed < END_TO_END_BUDGET
    report(4, ok, f"{len(specs)} solves over F_{P1009}, {rational} rational output points all in the "
                  f"oracle set, residual zero, deg w <= min(c, c'); {elapsed:.1f} s (< {END_TO_END_BUDGET:.0f} s)")
    assert ok, failures


# -- 5. column and row modes agree --

MODE_CASES = [
    [["x + 2*y - 1", "3*x - y + 4", "x + y + 7"], ["2*x - y + 5", "x + 3*y - 2", "5*x - y + 1"]],
    [["x^2 + y - 3", "x*y + 2*y^2 - x"]],
    [["x^2 - 2*y + 1", "x + y", "3*x - 4"], ["y^2 + x", "2*x*y - 1", "y + 5"]],
    [["x^2 - 3", "y - x"]],
    [["x*y - 1", "x^2 + y^2 - 4"]],
]


def test_criterion_5_mode_agreement():
    t = time.perf_counter()
    bad = []
    for k, rows in enumerate(MODE_CASES):
        spec = problem(rows)
        F, G = spec.programs()
        prof = spec.profile()
        ctx = FieldCtx(BIG, k)
        col = column_degree(F, G, prof, ctx)
        row = row_degree(F, G, prof, ctx)
        if not same_points(col, row):
            bad.append(k)
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < MODE_AGREEMENT_BUDGET
    report(5, ok, f"{len(MODE_CASES)} shared instances, identical point sets on all but {len(bad)}; "
                  f"{elapsed:.1f} s (< {MODE_AGREEMENT_BUDGET:.0f} s)")
    assert ok, bad


# -- 6. isolated versus simple --

def _column_instance(rows, names, seed, prime):
    spec = problem(rows, names=names)
    F, G = spec.programs()
    prof = spec.profile()
    bd = bounds(prof)
    start = build_column_start(prof, FieldCtx(prime, seed).rng("acceptance", 6), prime, F, G)
    return HomotopyInstance(start.B, start.R0, e=bd.e, c=bd.c)


def test_criterion_6_isolated_versus_simple():
    # squared entry: x^2 = y = 0 has the origin with multiplicity 2
    inst = _column_instance([["x^2", "y"]], ("x", "y"), 0, BIG)
    iso, sim = run_isolated(inst), run_simple(inst)
    X, Y = oracle.pvar(0, 2), oracle.pvar(1, 2)
    mult = oracle.local_multiplicity([oracle.pmul(X, X, BIG), Y], inst.c, BIG)
    squared_ok = iso.rational_points() == [(0, 0)] and sim.degree == 0 and mult == 2

    # embedded line: x*y = x*(x - 1) = 0 is the line x = 0 plus the point (1, 0)
    inst = _column_instance([["x*y", "x*(x - 1)"]], ("x", "y"), 0, P1009)
    cand = endpoints(inst).rational_points()
    on_line = [pt for pt in cand if pt[0] == 0]
    out = run_isolated(inst).rational_points()
    line_polys = [oracle.pmul(X, Y, P1009), oracle.pmul(X, oracle.padd(X, oracle.pconst(1, 2, P1009), P1009, -1), P1009)]
    oracle_says = [oracle.is_isolated_oracle(line_polys, pt, inst.c, P1009) for pt in on_line]
    enum = set(oracle.enumerate_variety(problem([["x*y", "x*(x - 1)"]]), P1009))
    line_ok = (out == [(1, 0)] and on_line and not any(oracle_says)
               and all(pt in enum for pt in on_line))
    ok = squared_ok and line_ok
    report(6, ok, f"double point kept by run_isolated ({iso.rational_points()}) and dropped by run_simple "
                  f"(multiplicity {mult}); {len(on_line)} candidate(s) on the line x = 0 filtered, output {out}")
    assert ok


# -- 7. local dimension test versus the Macaulay oracle --

def local_suite():
    p = P101
    v = oracle.pvar
    m = lambda *fs: oracle.pmul(fs[0], fs[1], p) if len(fs) == 2 else oracle.pmul(fs[0], m(*fs[1:]), p)  # noqa: E731
    sub = lambda a, b: oracle.padd(a, b, p, -1)  # noqa: E731
    one = lambda n: oracle.pconst(1, n, p)  # noqa: E731
    X1, X2 = v(0, 2), v(1, 2)
    Y1, Y2, Y3 = v(0, 3), v(1, 3), v(2, 3)
    suite = []
    # coordinate ideals: simple points
    suite += [([v(0, 1)], 1), ([X1, X2], 1), ([Y1, Y2, Y3], 1)]
    # monomial ideals of growing multiplicity
    suite += [([m(X1, X1), X2], 2), ([m(X1, X1), X2], 3), ([m(X1, X1, X1), X2], 2),
              ([m(X1, X1), m(X1, X2), m(X2, X2)], 3), ([m(X1, X1), m(X1, X2), m(X2, X2)], 2),
              ([m(X1, X1, X1), m(X2, X2)], 6), ([m(X1, X1, X1), m(X2, X2)], 5),
              ([m(Y1, Y1), Y2, Y3], 2), ([m(Y1, Y1), m(Y2, Y2), Y3], 4),
              ([m(Y1, Y1), m(Y2, Y2), m(Y3, Y3)], 6), ([m(Y1, Y2), m(Y2, Y3), m(Y1, Y3), m(Y1, Y1), m(Y2, Y2), m(Y3, Y3)], 4)]
    # non-monomial isolated points
    suite += [([sub(m(X1, X1), m(X2, X2, X2)), m(X1, X2)], 5), ([sub(m(X1, X1), m(X2, X2, X2)), m(X1, X2)], 4),
              ([oracle.padd(X1, m(X2, X2), p), m(X2, X2, X2)], 3)]
    # embedded and positive-dimensional components through the origin
    suite += [([m(X1, X2), m(X1, sub(X1, one(2)))], 3), ([m(X1, X2), m(X1, sub(X1, one(2)))], 6),
              ([m(X1, X2)], 4), ([m(Y1, Y2), m(Y1, Y3)], 3), ([m(Y1, Y1), m(Y1, Y2)], 5),
              ([m(Y1, Y2), m(Y2, Y3), m(Y1, Y3)], 4), ([m(X1, X1, X2), m(X1, X2, X2)], 6)]
    return suite


def _text(poly, n):
    names = [f"x{i + 1}" for i in range(n)]
    return " + ".join("*".join([str(c)] + [f"{names[i]}^{e}" for i, e in enumerate(mon) if e])
                      for mon, c in poly.items())


def test_criterion_7_localdim_against_oracle():
    t = time.perf_counter()
    suite = local_suite()
    K = PrimeField(P101)
    bad = []
    verdicts = []
    for polys, mu in suite:
        n = len(next(iter(polys[0])))
        system = prog([_text(f, n) for f in polys], [f"x{i + 1}" for i in range(n)])
        got = is_isolated(system, [0] * n, mu, K)
        want = oracle.local_multiplicity(polys, mu, P101, n) <= mu
        verdicts.append(got)
        if got != want:
            bad.append((polys, mu))
    elapsed = time.perf_counter() - t
    ok = len(suite) >= MIN_LOCAL_IDEALS and not bad and elapsed < LOCALDIM_BUDGET and \
        any(verdicts) and not all(verdicts)
    report(7, ok, f"{len(suite)} local ideals ({sum(verdicts)} isolated), agreement on all but {len(bad)}; "
                  f"{elapsed:.2f} s (< {LOCALDIM_BUDGET:.0f} s)")
    assert ok, bad


# -- 8. homotopy micro-oracles --

def _micro(texts, starts, e, c):
    B = prog(texts, ["T", "x"])
    return HomotopyInstance(B, from_points(starts, (1,), BIG), e=e, c=c)


def test_criterion_8_micro_oracles():
    p = BIG
    fr = lambda a, b: a * pow(b, -1, p) % p  # noqa: E731
    checks = []
    inst = _micro(["x - 5"], [(5,)], 1, 1)
    (br,) = [lift(inst, b, 4) for b in decompose(inst)]
    checks.append(br.x == [(5, 0, 0, 0)] and endpoints(inst).rational_points() == [(5,)])
    inst = _micro(["x - T"], [(0,)], 1, 1)
    (br,) = [lift(inst, b, 4) for b in decompose(inst)]
    par = reconstruct(inst, [lift(inst, b, 7) for b in decompose(inst)])
    checks.append(br.x == [(0, 1, 0, 0)] and par.w == (((0, p - 1), (1,)), ((1,), (1,)))
                  and endpoints(inst).rational_points() == [(1,)])
    inst = _micro(["x^2 - 1 - 3*T"], [(1,), (p - 1,)], 3, 2)
    series = {b.w: b for b in (lift(inst, b, 4) for b in decompose(inst))}[(p - 1, 1)].x[0]
    par = reconstruct(inst, [lift(inst, b, 11) for b in decompose(inst)])
    checks.append(series == (1, fr(3, 2), fr(-9, 8), fr(27, 16))
                  and par.w == (((p - 1, p - 3), (1,)), ((), (1,)), ((1,), (1,)))
                  and endpoints(inst).rational_points() == [(2,), (p - 2,)])
    ok = all(checks)
    report(8, ok, "X = 5, X = T, X^2 = 1 + 3T: series, w(T, Y) and endpoint sets "
                  + ", ".join("exact" if c else "WRONG" for c in checks))
    assert ok


# -- 9. property suites --

PROPERTY_FILES = ["test_field_linalg.py", "test_upoly.py", "test_rings.py", "test_slp.py", "test_zdp.py",
                  "test_localdim.py", "test_homotopy.py", "test_detstart.py", "test_solver.py", "test_oracle.py"]


def test_criterion_9_property_suites(request):
    from hypothesis import settings

    profile_ok = settings.default.max_examples == PROPERTY_CASES and settings.default.derandomize
    seen = request.config.stash.get(PROPERTY_KEY, None)
    if seen is None or not seen["ran"]:
        # run on their own (this file was selected alone)
        proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                               *[str(TESTS / f) for f in PROPERTY_FILES], "-k", "not criterion"],
                              capture_output=True, text=True, cwd=TESTS.parent)
        passed = proc.returncode == 0
        detail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else "no output"
    else:
        passed = not seen["failed"]
        detail = f"{seen['ran']} property tests ran in this session, {len(seen['failed'])} failed"
    ok = profile_ok and passed
    report(9, ok, f"{PROPERTY_CASES} derandomized cases per property; {detail}")
    assert ok, seen and seen["failed"]


from conftest import PROPERTY_KEY  # noqa: E402
