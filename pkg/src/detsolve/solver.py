"""Problem files, mode selection and the top-level solve."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import oracle
from .detstart import DegreeProfile, bounds, column_degree, row_degree, target_program
from .errors import DimensionMismatch, ParseError
from .expr import compile_exprs, degree, parse_expr, to_text
from .field_linalg import DEFAULT_PRIME, FieldCtx, rref
from .slp import Slp, jacobian_transform, evaluate
from .zdp import ZeroDimParam, dynamic, residual

log = logging.getLogger(__name__)

MODES = ("auto", "column", "row")


@dataclass(frozen=True)
class ProblemSpec:
    var_names: tuple
    p: int
    q: int
    F: tuple
    G: tuple = ()
    options: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "var_names", tuple(self.var_names))
        object.__setattr__(self, "F", tuple(tuple(row) for row in self.F))
        object.__setattr__(self, "G", tuple(self.G))
        if len(self.F) != self.p or any(len(row) != self.q for row in self.F):
            raise DimensionMismatch(f"F must be {self.p} x {self.q}")
        if self.n != self.q - self.p + self.s + 1:
            raise DimensionMismatch(
                f"{self.n} variables declared but q - p + s + 1 = {self.q - self.p + self.s + 1}")

    @property
    def s(self) -> int:
        return len(self.G)

    @property
    def n(self) -> int:
        return len(self.var_names)

    def profile(self) -> DegreeProfile:
        cdeg = [max(degree(self.F[i][j]) for i in range(self.p)) for j in range(self.q)]
        rdeg = [max(degree(e) for e in row) for row in self.F]
        gdeg = [degree(g) for g in self.G]
        return DegreeProfile(self.p, self.q, self.s, self.n, cdeg, rdeg, gdeg)

    def programs(self) -> tuple[Slp, Slp | None]:
        F = compile_exprs([e for row in self.F for e in row], self.n)
        G = compile_exprs(list(self.G), self.n) if self.G else None
        return F, G


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def _strip_comment(line):
    k = line.find("#")
    return line if k < 0 else line[:k]


def parse(text: str) -> ProblemSpec:
    names = None
    p = q = None
    rows = []
    eqs = []
    pending = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        if pending:
            cells = line.split("|")
            if len(cells) != q:
                raise ParseError(f"expected {q} entries in matrix row, got {len(cells)}", lineno, indent + 1)
            row = []
            col = 1
            for cell in cells:
                row.append(parse_expr(cell, names, lineno, col))
                col += len(cell) + 1
            rows.append(row)
            pending -= 1
            continue
        word, _, rest = line.strip().partition(" ")
        rest_col = indent + len(word) + 2
        if word == "vars":
            if names is not None:
                raise ParseError("duplicate vars line", lineno, indent + 1)
            names = {}
            for k, name in enumerate(rest.split()):
                if not name.isidentifier():
                    raise ParseError(f"bad variable name {name!r}", lineno, rest_col)
                if name in names:
                    raise ParseError(f"variable {name!r} declared twice", lineno, rest_col)
                names[name] = k
        elif word == "matrix":
            if names is None:
                raise ParseError("vars must come before matrix", lineno, indent + 1)
            if p is not None:
                raise ParseError("duplicate matrix line", lineno, indent + 1)
            dims = rest.split()
            if len(dims) != 2 or not all(d.isdigit() for d in dims):
                raise ParseError("expected 'matrix p q'", lineno, rest_col)
            p, q = int(dims[0]), int(dims[1])
            if p < 1 or q < 1:
                raise ParseError("matrix dimensions must be positive", lineno, rest_col)
            pending = p
        elif word == "eq":
            if names is None:
                raise ParseError("vars must come before eq", lineno, indent + 1)
            eqs.append(parse_expr(rest, names, lineno, rest_col))
        else:
            raise ParseError(f"unknown directive {word!r}", lineno, indent + 1)
    if pending:
        raise ParseError(f"matrix is missing {pending} row(s)", None, None)
    if names is None or p is None:
        raise ParseError("input needs a vars line and a matrix", None, None)
    return ProblemSpec(tuple(names), p, q, tuple(map(tuple, rows)), tuple(eqs))


def print_spec(spec: ProblemSpec) -> str:
    names = spec.var_names
    lines = ["vars " + " ".join(names), f"matrix {spec.p} {spec.q}"]
    for row in spec.F:
        lines.append(" | ".join(to_text(e, names) for e in row))
    for g in spec.G:
        lines.append("eq " + to_text(g, names))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# solving
# ---------------------------------------------------------------------------


@dataclass
class SolveReport:
    zdp: ZeroDimParam
    mode_used: str
    bounds: object
    retries: int
    checks: dict
    seed: int
    prime: int

    def to_json(self):
        out = {"prime": self.prime, "seed": self.seed, "mode": self.mode_used}
        out.update(self.zdp.to_json())
        out["bounds"] = self.bounds.to_json()
        out["retries"] = self.retries
        out["checks"] = dict(self.checks)
        return out


def pick_mode(bd, mode="auto"):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode != "auto":
        return mode
    return "row" if bd.cprime < bd.c else "column"


def jacobian_full_rank(r: ZeroDimParam, target: Slp) -> bool:
    """Whether the Jacobian of ``target`` has rank n at every point of r."""
    if r.degree == 0:
        return True
    n, m = r.n, target.n_outputs
    J = jacobian_transform(target)

    def test(piece):
        Q, xs = piece.coordinates()
        vals = evaluate(J, Q, xs)[m:]
        cols = [[vals[j * n + i] for j in range(m)] for i in range(n)]
        return len(rref(Q, cols)[1]) == n

    return all(ok for _, ok in dynamic(r, test))


def solve(spec: ProblemSpec, mode=None, simple=None, seed=None, prime=None,
          retry_budget=8) -> SolveReport:
    opts = spec.options
    mode = mode or opts.get("mode", "auto")
    simple = opts.get("simple", False) if simple is None else simple
    seed = opts.get("seed", 0) if seed is None else seed
    prime = prime or opts.get("prime") or DEFAULT_PRIME

    profile = spec.profile()
    bd = bounds(profile)
    used = pick_mode(bd, mode)
    ctx = FieldCtx(prime, seed, retry_budget)
    F, G = spec.programs()
    stats = {}
    runner = column_degree if used == "column" else row_degree
    out = runner(F, G, profile, ctx, simple=simple, stats=stats)

    target = target_program(F, G, spec.p, spec.q)
    checks = {
        "residual_zero": not any(residual(out, target)),
        "count_within_bound": out.degree <= min(bd.c, bd.cprime),
    }
    if simple:
        checks["simple_rank_full"] = jacobian_full_rank(out, target)
    log.info("solved in %s mode: %d points, %d retries", used, out.degree, stats.get("retries", 0))
    return SolveReport(out, used, bd, stats.get("retries", 0), checks, seed, prime)


def oracle_check(spec: ProblemSpec, small_prime: int, seed=None, mode=None, budget=oracle.DEFAULT_BUDGET):
    """Solve over F_small_prime and compare with exhaustive enumeration."""
    points = oracle.enumerate_variety(spec, small_prime, budget)
    report = solve(spec, mode=mode, seed=seed, prime=small_prime)
    found = report.zdp.rational_points()
    pset = set(points)
    simple = oracle.simple_points(spec, small_prime, points)
    return {
        "field": small_prime,
        "oracle_count": len(points),
        "oracle_points": [list(x) for x in points],
        "solver_count": report.zdp.degree,
        "solver_rational": len(found),
        "contained": all(x in pset for x in found),
        "missing_simple": [list(x) for x in simple if x not in set(found)],
        "mode": report.mode_used,
    }
