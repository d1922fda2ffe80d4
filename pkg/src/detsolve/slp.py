"""Straight-line programs and the transforms the solver needs.

An instruction is a triple ``(op, a, b)``: ``(INPUT, i, 0)`` reads input i,
``(CONST, c, 0)`` loads the integer c, and ``(ADD|SUB|MUL, a, b)`` combine
two earlier slots.  Slot k holds the value computed by instruction k.
Programs are immutable; transforms append to a copy.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

INPUT, CONST, ADD, SUB, MUL = range(5)
_OPNAMES = {INPUT: "input", CONST: "const", ADD: "add", SUB: "sub", MUL: "mul"}

# marker for the structural constant 1 inside transforms (None means 0)
_ONE = "one"


@dataclass(frozen=True)
class Slp:
    n_inputs: int
    instructions: tuple
    outputs: tuple

    def __post_init__(self):
        for k, (op, a, b) in enumerate(self.instructions):
            if op == INPUT:
                if not 0 <= a < self.n_inputs:
                    raise ValueError(f"slot {k}: input index {a} out of range")
            elif op in (ADD, SUB, MUL):
                if not (0 <= a < k and 0 <= b < k):
                    raise ValueError(f"slot {k}: operand does not precede the instruction")
            elif op != CONST:
                raise ValueError(f"slot {k}: unknown opcode {op}")
        for o in self.outputs:
            if not 0 <= o < len(self.instructions):
                raise ValueError(f"output slot {o} out of range")

    @property
    def length(self) -> int:
        """Number of arithmetic instructions."""
        return sum(1 for op, _, _ in self.instructions if op >= ADD)

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)

    def __repr__(self):
        return f"Slp(n_inputs={self.n_inputs}, length={self.length}, outputs={len(self.outputs)})"

    def dump(self) -> str:
        lines = []
        for k, (op, a, b) in enumerate(self.instructions):
            args = f"{a}" if op in (INPUT, CONST) else f"{a}, {b}"
            lines.append(f"{k:4d}: {_OPNAMES[op]}({args})")
        lines.append(f"outputs: {list(self.outputs)}")
        return "\n".join(lines)


class SlpBuilder:
    """Append-only builder; inputs and constants are cached per value."""

    def __init__(self, n_inputs: int, base: Slp | None = None):
        self.n_inputs = n_inputs
        self.instructions = []
        self._inputs = {}
        self._consts = {}
        if base is not None:
            if base.n_inputs > n_inputs:
                raise ValueError("builder has fewer inputs than the base program")
            for op, a, b in base.instructions:
                self._emit(op, a, b)

    def _emit(self, op, a, b=0):
        k = len(self.instructions)
        self.instructions.append((op, a, b))
        if op == INPUT:
            self._inputs.setdefault(a, k)
        elif op == CONST:
            self._consts.setdefault(a, k)
        return k

    def input(self, i):
        k = self._inputs.get(i)
        return self._emit(INPUT, i) if k is None else k

    def const(self, c):
        c = int(c)
        k = self._consts.get(c)
        return self._emit(CONST, c) if k is None else k

    def add(self, a, b):
        return self._emit(ADD, a, b)

    def sub(self, a, b):
        return self._emit(SUB, a, b)

    def mul(self, a, b):
        return self._emit(MUL, a, b)

    def neg(self, a):
        return self.sub(self.const(0), a)

    def scale(self, c, a):
        return self.mul(self.const(c), a)

    def sum(self, slots):
        slots = list(slots)
        if not slots:
            return self.const(0)
        acc = slots[0]
        for s in slots[1:]:
            acc = self.add(acc, s)
        return acc

    def prod(self, slots):
        slots = list(slots)
        if not slots:
            return self.const(1)
        acc = slots[0]
        for s in slots[1:]:
            acc = self.mul(acc, s)
        return acc

    def pow(self, a, k):
        if k < 0:
            raise ValueError("negative exponent")
        result = None
        base = a
        while k:
            if k & 1:
                result = base if result is None else self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return self.const(1) if result is None else result

    def affine(self, const, coeffs, inputs=None):
        """c0 + sum c_i x_i; ``inputs`` maps coordinate i to a slot."""
        terms = [self.const(const)]
        for i, c in enumerate(coeffs):
            if c:
                x = inputs[i] if inputs is not None else self.input(i)
                terms.append(self.mul(self.const(c), x))
        return self.sum(terms)

    def embed(self, prog: Slp, input_slots):
        """Append a copy of ``prog`` reading its inputs from ``input_slots``.

        Returns the slots of its outputs.
        """
        if len(input_slots) != prog.n_inputs:
            raise ValueError("wrong number of input slots")
        remap = []
        for op, a, b in prog.instructions:
            if op == INPUT:
                remap.append(input_slots[a])
            elif op == CONST:
                remap.append(self.const(a))
            else:
                remap.append(self._emit(op, remap[a], remap[b]))
        return [remap[o] for o in prog.outputs]

    def build(self, outputs) -> Slp:
        return Slp(self.n_inputs, tuple(self.instructions), tuple(outputs))


def evaluate(prog: Slp, ctx, point):
    """Evaluate every output of ``prog`` at ``point`` inside ring ``ctx``."""
    if len(point) != prog.n_inputs:
        raise ValueError(f"expected {prog.n_inputs} inputs, got {len(point)}")
    add, sub, mul, from_int = ctx.add, ctx.sub, ctx.mul, ctx.from_int
    vals = []
    push = vals.append
    for op, a, b in prog.instructions:
        if op == MUL:
            push(mul(vals[a], vals[b]))
        elif op == ADD:
            push(add(vals[a], vals[b]))
        elif op == SUB:
            push(sub(vals[a], vals[b]))
        elif op == INPUT:
            push(point[a])
        else:
            push(from_int(a))
    return [vals[o] for o in prog.outputs]


# public alias ``eval``; the builtin stays reachable as builtins.eval
eval = evaluate


def select_outputs(prog: Slp, indices) -> Slp:
    """Program computing only the chosen outputs, unreachable slots dropped."""
    outs = [prog.outputs[i] for i in indices]
    live = [False] * len(prog.instructions)
    for o in outs:
        live[o] = True
    for k in range(len(prog.instructions) - 1, -1, -1):
        if live[k]:
            op, a, b = prog.instructions[k]
            if op >= ADD:
                live[a] = live[b] = True
    remap = {}
    instrs = []
    for k, (op, a, b) in enumerate(prog.instructions):
        if not live[k]:
            continue
        if op >= ADD:
            instrs.append((op, remap[a], remap[b]))
        else:
            instrs.append((op, a, b))
        remap[k] = len(instrs) - 1
    return Slp(prog.n_inputs, tuple(instrs), tuple(remap[o] for o in outs))


def specialize(prog: Slp, values: dict) -> Slp:
    """Replace the inputs listed in ``values`` by integer constants.

    Remaining inputs are renumbered in increasing order.
    """
    keep = [i for i in range(prog.n_inputs) if i not in values]
    builder = SlpBuilder(len(keep))
    slots = []
    for i in range(prog.n_inputs):
        slots.append(builder.const(values[i]) if i in values else builder.input(keep.index(i)))
    outs = builder.embed(prog, slots)
    return builder.build(outs)


def shifted(prog: Slp) -> Slp:
    """P(X, x) = prog(X + x) as a program in 2n inputs (X first, then x)."""
    n = prog.n_inputs
    builder = SlpBuilder(2 * n)
    slots = [builder.add(builder.input(i), builder.input(n + i)) for i in range(n)]
    return builder.build(builder.embed(prog, slots))


class _Sym:
    """Arithmetic on builder slots where None stands for 0 and _ONE for 1."""

    def __init__(self, builder):
        self.b = builder

    def add(self, x, y):
        if x is None:
            return y
        if y is None:
            return x
        return self.b.add(self.slot(x), self.slot(y))

    def sub(self, x, y):
        if y is None:
            return x
        if x is None:
            return self.b.neg(self.slot(y))
        return self.b.sub(self.slot(x), self.slot(y))

    def mul(self, x, y):
        if x is None or y is None:
            return None
        if x == _ONE:
            return y
        if y == _ONE:
            return x
        return self.b.mul(x, y)

    def neg(self, x):
        return None if x is None else self.b.neg(self.slot(x))

    def slot(self, x):
        if x is None:
            return self.b.const(0)
        if x == _ONE:
            return self.b.const(1)
        return x


def jacobian_transform(prog: Slp, wrt=None) -> Slp:
    """Append all partial derivatives by forward-mode differentiation.

    ``wrt`` lists the input indices to differentiate against (default: all).
    New outputs follow the original ones, ordered by output then variable.
    """
    wrt = list(range(prog.n_inputs)) if wrt is None else list(wrt)
    pos = {v: i for i, v in enumerate(wrt)}
    nv = len(wrt)
    builder = SlpBuilder(prog.n_inputs, prog)
    sym = _Sym(builder)
    d = []
    for op, a, b in prog.instructions:
        if op == INPUT:
            g = [None] * nv
            if a in pos:
                g[pos[a]] = _ONE
        elif op == CONST:
            g = [None] * nv
        elif op == ADD:
            g = [sym.add(x, y) for x, y in zip(d[a], d[b])]
        elif op == SUB:
            g = [sym.sub(x, y) for x, y in zip(d[a], d[b])]
        else:
            g = [sym.add(sym.mul(a, y), sym.mul(x, b)) for x, y in zip(d[a], d[b])]
        d.append(g)
    outs = list(prog.outputs)
    for o in prog.outputs:
        outs.extend(sym.slot(x) for x in d[o])
    return builder.build(outs)


def divided_difference_transform(prog: Slp, k: int) -> Slp:
    """Outputs (f - f|_{X_k=0}) / X_k for each output f (k is 0-based).

    Every slot value g is tracked as a pair with g = eta + X_k * nu, where
    eta does not involve X_k.
    """
    if not 0 <= k < prog.n_inputs:
        raise ValueError("variable index out of range")
    builder = SlpBuilder(prog.n_inputs)
    sym = _Sym(builder)
    xk = builder.input(k)
    eta, nu = [], []
    for op, a, b in prog.instructions:
        if op == INPUT:
            if a == k:
                e, v = None, _ONE
            else:
                e, v = builder.input(a), None
        elif op == CONST:
            e, v = (builder.const(a) if a else None), None
        elif op == ADD:
            e, v = sym.add(eta[a], eta[b]), sym.add(nu[a], nu[b])
        elif op == SUB:
            e, v = sym.sub(eta[a], eta[b]), sym.sub(nu[a], nu[b])
        else:
            e = sym.mul(eta[a], eta[b])
            cross = sym.add(sym.mul(eta[a], nu[b]), sym.mul(nu[a], eta[b]))
            both = sym.mul(nu[a], nu[b])
            v = sym.add(cross, sym.mul(xk, both) if both is not None else None)
        eta.append(e)
        nu.append(v)
    return builder.build([sym.slot(nu[o]) for o in prog.outputs])


def berkowitz_det(builder: SlpBuilder, A):
    """Division-free determinant of a square matrix of builder slots."""
    n = len(A)
    sym = _Sym(builder)
    if n == 0:
        return builder.const(1)
    vec = [_ONE, sym.neg(A[n - 1][n - 1])]
    for r in range(n - 2, -1, -1):
        m = n - 1 - r
        a = A[r][r]
        R = [A[r][j] for j in range(r + 1, n)]
        C = [A[i][r] for i in range(r + 1, n)]
        A1 = [[A[i][j] for j in range(r + 1, n)] for i in range(r + 1, n)]
        col = [_ONE, sym.neg(a)]
        powc = C
        for _ in range(m):
            col.append(sym.neg(_dot(sym, R, powc)))
            powc = [_dot(sym, row, powc) for row in A1]
        new = []
        for i in range(m + 2):
            acc = None
            for j in range(min(i, m) + 1):
                acc = sym.add(acc, sym.mul(col[i - j], vec[j]))
            new.append(acc)
        vec = new
    last = vec[n]
    return sym.slot(last if n % 2 == 0 else sym.neg(last))


def _dot(sym, xs, ys):
    acc = None
    for x, y in zip(xs, ys):
        acc = sym.add(acc, sym.mul(x, y))
    return acc


def minors_slp(prog: Slp, p: int, q: int, entries=None) -> Slp:
    """Program whose outputs are the maximal minors of a p x q matrix.

    ``entries`` gives the positions (in ``prog.outputs``) of the matrix in
    row-major order; by default the last p*q outputs.  Minors follow the
    lexicographic order of column subsets.
    """
    if p > q:
        raise ValueError("need p <= q")
    if entries is None:
        entries = range(len(prog.outputs) - p * q, len(prog.outputs))
    entries = list(entries)
    if len(entries) != p * q:
        raise ValueError("need p*q matrix entries")
    builder = SlpBuilder(prog.n_inputs, prog)
    M = [[prog.outputs[entries[i * q + j]] for j in range(q)] for i in range(p)]
    outs = []
    for cols in combinations(range(q), p):
        sub = [[M[i][j] for j in cols] for i in range(p)]
        outs.append(berkowitz_det(builder, sub))
    return builder.build(outs)
