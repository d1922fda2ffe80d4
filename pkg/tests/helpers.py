"""Small shared builders for the test modules."""
from detsolve.expr import compile_exprs, parse_expr
from detsolve.solver import parse

P101 = 101
P1009 = 1009
BIG = 2**61 - 1


def prog(texts, names):
    """Compile expression strings over the given variable names."""
    env = {v: i for i, v in enumerate(names)}
    return compile_exprs([parse_expr(t, env) for t in texts], len(names))


def problem(rows, eqs=(), names=("x", "y")):
    lines = ["vars " + " ".join(names), f"matrix {len(rows)} {len(rows[0])}"]
    lines += [" | ".join(r) for r in rows]
    lines += ["eq " + g for g in eqs]
    return parse("\n".join(lines))
