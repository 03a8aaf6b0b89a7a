"""Closed expression trees in one parameter p.

Node kinds: const, p, add, sub, mul, div, neg, pow (integer exponent), sqrt.
Every tree supports a rigorous interval enclosure over a p-box, exact
evaluation at a rational p (as an AlgNum), substitution and JSON round-trip.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator

from .algnum import AlgNum
from .interval import DEFAULT_PREC, RInterval, UndefinedExpression

_ARITY = {"const": 0, "p": 0, "neg": 1, "sqrt": 1, "pow": 1,
          "add": 2, "sub": 2, "mul": 2, "div": 2}


class ParamExpr:
    __slots__ = ("op", "args", "value", "_hash", "_cache")

    def __init__(self, op: str, args: tuple = (), value=None):
        if op not in _ARITY or len(args) != _ARITY[op]:
            raise ValueError(f"bad node {op}/{len(args)}")
        self.op = op
        self.args = args
        self.value = value
        self._hash = None
        self._cache: dict = {}

    # structural identity ------------------------------------------------
    def _key(self):
        return (self.op, self.value, self.args)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, ParamExpr):
            return NotImplemented
        return hash(self) == hash(other) and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    # construction -----------------------------------------------------
    @staticmethod
    def lift(x) -> "ParamExpr":
        if isinstance(x, ParamExpr):
            return x
        if isinstance(x, (int, Fraction)):
            return const(x)
        if isinstance(x, str):
            return const(Fraction(x))
        raise TypeError(f"cannot lift {type(x).__name__} into an expression")

    def is_const_value(self, v=None) -> bool:
        return self.op == "const" and (v is None or self.value == v)

    def __add__(self, other):
        o = ParamExpr.lift(other)
        if self.is_const_value(0):
            return o
        if o.is_const_value(0):
            return self
        if self.op == "const" and o.op == "const":
            return const(self.value + o.value)
        return ParamExpr("add", (self, o))

    def __radd__(self, other):
        return ParamExpr.lift(other) + self

    def __sub__(self, other):
        o = ParamExpr.lift(other)
        if o.is_const_value(0):
            return self
        if self.op == "const" and o.op == "const":
            return const(self.value - o.value)
        if self.is_const_value(0):
            return -o
        return ParamExpr("sub", (self, o))

    def __rsub__(self, other):
        return ParamExpr.lift(other) - self

    def __neg__(self):
        if self.op == "const":
            return const(-self.value)
        if self.op == "neg":
            return self.args[0]
        return ParamExpr("neg", (self,))

    def __mul__(self, other):
        o = ParamExpr.lift(other)
        for a, b in ((self, o), (o, self)):
            if a.is_const_value(0):
                return const(0)
            if a.is_const_value(1):
                return b
        if self.op == "const" and o.op == "const":
            return const(self.value * o.value)
        return ParamExpr("mul", (self, o))

    def __rmul__(self, other):
        return ParamExpr.lift(other) * self

    def __truediv__(self, other):
        o = ParamExpr.lift(other)
        if o.is_const_value(0):
            raise ZeroDivisionError("division by the constant 0")
        if o.is_const_value(1):
            return self
        if self.op == "const" and o.op == "const":
            return const(self.value / o.value)
        return ParamExpr("div", (self, o))

    def __rtruediv__(self, other):
        return ParamExpr.lift(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k == 1:
            return self
        if k == 0:
            return const(1)
        if self.op == "const" and (self.value != 0 or k > 0):
            return const(self.value ** k)
        return ParamExpr("pow", (self,), k)

    def sqrt(self) -> "ParamExpr":
        if self.op == "const" and self.value in (0, 1):
            return self
        return ParamExpr("sqrt", (self,))

    # inspection -------------------------------------------------------
    def walk(self) -> Iterator["ParamExpr"]:
        """Each distinct sub-expression once, children before parents."""
        seen = set()
        stack = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done:
                if id(node) not in seen:
                    seen.add(id(node))
                    yield node
                continue
            if id(node) in seen:
                continue
            stack.append((node, True))
            for a in node.args:
                stack.append((a, False))

    def depends_on_p(self) -> bool:
        c = self._cache.get("dep")
        if c is None:
            c = self.op == "p" or any(a.depends_on_p() for a in self.args)
            self._cache["dep"] = c
        return c

    def __repr__(self) -> str:
        return f"ParamExpr({self})"

    def __str__(self) -> str:
        op = self.op
        if op == "const":
            v = self.value
            return str(v) if v >= 0 and v.denominator == 1 else f"({v})"
        if op == "p":
            return "p"
        a = [str(x) for x in self.args]
        if op == "neg":
            return f"-({a[0]})"
        if op == "sqrt":
            return f"sqrt({a[0]})"
        if op == "pow":
            return f"({a[0]})^{self.value}"
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[op]
        return f"({a[0]} {sym} {a[1]})"

    # exact evaluation -------------------------------------------------
    def exact(self, p) -> AlgNum:
        """Exact value at a rational p; raises for nested radicals."""
        p = AlgNum.rational(Fraction(p))
        memo: dict[int, AlgNum] = {}
        for node in self.walk():
            op = node.op
            if op == "const":
                v = AlgNum.rational(node.value)
            elif op == "p":
                v = p
            else:
                a = [memo[id(x)] for x in node.args]
                if op == "add":
                    v = a[0] + a[1]
                elif op == "sub":
                    v = a[0] - a[1]
                elif op == "mul":
                    v = a[0] * a[1]
                elif op == "div":
                    if a[1].is_zero():
                        raise UndefinedExpression(f"denominator vanishes at p={p}")
                    v = a[0] / a[1]
                elif op == "neg":
                    v = -a[0]
                elif op == "pow":
                    if node.value < 0 and a[0].is_zero():
                        raise UndefinedExpression("negative power of 0")
                    v = a[0] ** node.value
                else:  # sqrt
                    if a[0].sign() < 0:
                        raise UndefinedExpression(f"negative radicand at p={p}")
                    v = a[0].sqrt()
            memo[id(node)] = v
        return memo[id(self)]

    def exact_fraction(self, p) -> Fraction:
        return self.exact(p).to_fraction()

    def at(self, p) -> "ParamExpr":
        """Substitute a rational value for p, returning a constant tree."""
        pe = const(Fraction(p))
        return self.map_p(lambda: pe)

    def map_p(self, repl: Callable[[], "ParamExpr"]) -> "ParamExpr":
        memo: dict[int, ParamExpr] = {}
        for node in self.walk():
            if node.op == "p":
                v = repl()
            elif node.op == "const":
                v = node
            else:
                a = [memo[id(x)] for x in node.args]
                v = _rebuild(node, a)
            memo[id(node)] = v
        return memo[id(self)]

    # interval evaluation ----------------------------------------------
    def interval(self, box: RInterval, prec: int = DEFAULT_PREC) -> RInterval:
        """Natural interval extension over box, rounded outward to 2**-prec."""
        return self._eval(box, prec, with_derivative=False)[0]

    def enclose(self, box: RInterval, prec: int = DEFAULT_PREC) -> RInterval:
        """Natural extension intersected with the mean-value form."""
        val, der = self._eval(box, prec, with_derivative=True)
        if der is None or box.is_point():
            return val
        m = box.mid
        center = self.interval(RInterval.point(m), prec)
        mv = (center + der * (box - m)).rounded(prec)
        lo, hi = max(val.lo, mv.lo), min(val.hi, mv.hi)
        if lo > hi:  # both are valid enclosures, so this cannot happen
            raise AssertionError("inconsistent enclosures")
        return RInterval(lo, hi)

    def _eval(self, box, prec, with_derivative):
        memo: dict[int, tuple] = {}
        for node in self.walk():
            memo[id(node)] = node._eval_node(box, prec, with_derivative, memo)
        return memo[id(self)]

    def _eval_node(self, box, prec, wd, memo):
        op = self.op
        if op == "const":
            return RInterval.point(self.value), (RInterval.point(0) if wd else None)
        if op == "p":
            return box, (RInterval.point(1) if wd else None)
        if not self.depends_on_p():
            key = ("const_enc", prec)
            enc = self._cache.get(key)
            if enc is None:
                enc = self._eval_const(prec)
                self._cache[key] = enc
            return enc, (RInterval.point(0) if wd else None)
        (a, da), *rest = [memo[id(x)] for x in self.args]
        if rest:
            b, db = rest[0]
        if op == "add":
            v = a + b
            d = da + db if wd and da is not None and db is not None else None
        elif op == "sub":
            v = a - b
            d = da - db if wd and da is not None and db is not None else None
        elif op == "neg":
            v = -a
            d = -da if wd and da is not None else None
        elif op == "mul":
            v = a * b
            d = da * b + a * db if wd and da is not None and db is not None else None
        elif op == "div":
            v = a / b
            d = (da * b - a * db) / (b * b) if wd and da is not None and db is not None else None
        elif op == "pow":
            k = self.value
            v = a ** k
            d = (k * a ** (k - 1)) * da if wd and da is not None else None
        else:  # sqrt
            v = a.sqrt(prec)
            d = None
            if wd and da is not None and v.lo > 0:
                d = da / (2 * v)
        v = v.rounded(prec)
        if d is not None:
            d = d.rounded(prec)
        return v, d

    def _eval_const(self, prec: int) -> RInterval:
        # p-free subtree: evaluate exactly when possible and enclose tightly
        try:
            return self.exact(0).enclosure(prec + 8).rounded(prec)
        except (NotImplementedError, UndefinedExpression, ZeroDivisionError):
            return self._eval(RInterval.point(0), prec, False)[0]

    # serialization ----------------------------------------------------
    def to_json(self):
        if self.op == "const":
            return str(self.value)
        if self.op == "p":
            return "p"
        out = {"op": self.op, "args": [a.to_json() for a in self.args]}
        if self.op == "pow":
            out["k"] = self.value
        return out

    @staticmethod
    def from_json(obj) -> "ParamExpr":
        if isinstance(obj, str):
            return P if obj == "p" else const(Fraction(obj))
        if isinstance(obj, (int, float)) and not isinstance(obj, bool):
            return const(Fraction(str(obj)))
        op = obj["op"]
        args = [ParamExpr.from_json(a) for a in obj["args"]]
        if op == "pow":
            return args[0] ** int(obj["k"])
        if op == "sqrt":
            return args[0].sqrt()
        if op == "neg":
            return -args[0]
        return _BINOPS[op](args[0], args[1])


_BINOPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def _rebuild(node: ParamExpr, a: list) -> ParamExpr:
    op = node.op
    if op in _BINOPS:
        return _BINOPS[op](a[0], a[1])
    if op == "neg":
        return -a[0]
    if op == "pow":
        return a[0] ** node.value
    return a[0].sqrt()


def const(x) -> ParamExpr:
    return ParamExpr("const", (), Fraction(x))


def sqrt(x) -> ParamExpr:
    return ParamExpr.lift(x).sqrt()


P = ParamExpr("p")
Q = 1 - P
