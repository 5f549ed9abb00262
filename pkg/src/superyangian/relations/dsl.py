"""A small language for relations among Yangian generators.

Grammar (whitespace-insensitive)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*")? unary)*          juxtaposition is a product
    unary    := "-" unary | power
    power    := atom ("^" INT)?
    atom     := NUMBER | "(" expr ")" | "[" expr "," expr "]" | "{" expr "," expr "}"
              | generator | scalar | "ad" "(" expr ")" "^" "{" iexpr "}" "(" expr ")"
              | "sym" "(" NAME ("," NAME)* ";" expr ")"
    generator:= ("x+" | "x-" | "h" | "ht") "_{" iexpr "," iexpr "}"
              | ("Jh" | "Jx+" | "Jx-") "_{" iexpr "}"
    scalar   := ("delta" | "a" | "b") "_{" iexpr "," iexpr "}" | "e1" | "e2" | "hbar"
    iexpr    := index arithmetic over NAME, INT, "+", "-", "abs(...)", "odd(...)",
                "m", "n", and the scalars a_{..}, b_{..}, delta_{..}

``ht_{i,1}`` is h~_{i,1} = h_{i,1} - (hbar/2) h_{i,0}^2.  ``sym(r1, r2; E)``
sums E over all permutations of the values bound to r1, r2.  Node indices are
read modulo m+n when a relation is instantiated.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

GEN_KINDS = ("x+", "x-", "h", "ht")
J_KINDS = ("Jh", "Jx+", "Jx-")
PARAM_NAMES = ("e1", "e2", "hbar")
RESERVED = {"ad", "sym", "delta", "a", "b", "e1", "e2", "hbar", "abs", "odd", "h", "ht", "m", "n"}


class RelationSyntaxError(ValueError):
    def __init__(self, msg: str, offset: int, text: str = ""):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset
        self.text = text


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Coef:
    """delta_{i,j}, a_{i,j} or b_{i,j}."""

    kind: str
    i: object
    j: object


@dataclass(frozen=True)
class Func:
    name: str  # abs, odd
    arg: object


@dataclass(frozen=True)
class Gen:
    kind: str
    i: object
    r: object = None


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Bracket:
    left: object
    right: object


@dataclass(frozen=True)
class Anti:
    left: object
    right: object


@dataclass(frozen=True)
class AdPow:
    x: object
    k: object
    y: object


@dataclass(frozen=True)
class Sym:
    names: tuple
    body: object


# --- tokenizer --------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<gen>Jx[+-]|Jh|x[+-]|ht|h)(?=_)"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<op>_\{|[\[\]{}(),;+\-*^=<>!]=?|[<>])"
    r")"
)


def tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise RelationSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        val = m.group(kind)
        start = m.start(kind)
        toks.append((kind, val, start))
        pos = m.end()
    return toks


# --- parser -------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.k = 0

    def error(self, msg):
        if self.k < len(self.toks):
            raise RelationSyntaxError(msg, self.toks[self.k][2], self.text)
        last = self.toks[-1][2] if self.toks else 0
        raise RelationSyntaxError(msg + " (unexpected end of input)", last, self.text)

    def peek(self, ahead=0):
        k = self.k + ahead
        return self.toks[k] if k < len(self.toks) else (None, None, len(self.text))

    def accept(self, val):
        if self.peek()[1] == val:
            self.k += 1
            return True
        return False

    def expect(self, val):
        if not self.accept(val):
            self.error(f"expected {val!r}")

    def done(self):
        if self.k != len(self.toks):
            self.error(f"unexpected token {self.peek()[1]!r}")

    # operator expressions
    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.toks[self.k][1]
            self.k += 1
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def _starts_atom(self):
        kind, val, _ = self.peek()
        if kind in ("gen", "num", "name"):
            return True
        return val in ("(", "[", "{")

    def term(self):
        node = self.unary()
        while True:
            if self.accept("*"):
                node = Mul(node, self.unary())
            elif self._starts_atom():
                node = Mul(node, self.unary())
            else:
                return node

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.k += 1
            kind, val, _ = self.peek()
            if kind != "num" or "/" in val:
                self.error("expected integer exponent")
            self.k += 1
            return Pow(base, int(val))
        return base

    def atom(self):
        kind, val, _ = self.peek()
        if kind is None:
            self.error("expected an expression")
        if kind == "num":
            self.k += 1
            return Num(Fraction(val))
        if val == "(":
            self.k += 1
            node = self.expr()
            self.expect(")")
            return node
        if val in ("[", "{"):
            self.k += 1
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]" if val == "[" else "}")
            return Bracket(left, right) if val == "[" else Anti(left, right)
        if kind == "gen":
            self.k += 1
            self.expect("_{")
            i = self.iexpr()
            if val in J_KINDS:
                self.expect("}")
                return Gen(val, i)
            self.expect(",")
            r = self.iexpr()
            self.expect("}")
            return Gen(val, i, r)
        if kind == "name":
            if val == "ad":
                self.k += 1
                self.expect("(")
                x = self.expr()
                self.expect(")")
                self.expect("^")
                self.expect("{")
                k = self.iexpr()
                self.expect("}")
                self.expect("(")
                y = self.expr()
                self.expect(")")
                return AdPow(x, k, y)
            if val == "sym":
                self.k += 1
                self.expect("(")
                names = [self.name()]
                while self.accept(","):
                    names.append(self.name())
                self.expect(";")
                body = self.expr()
                self.expect(")")
                return Sym(tuple(names), body)
            if val in ("delta", "a", "b"):
                return self.coef()
            if val in PARAM_NAMES:
                self.k += 1
                return Param(val)
            self.error(f"unknown symbol {val!r}")
        self.error(f"unexpected token {val!r}")

    def name(self):
        kind, val, _ = self.peek()
        if kind != "name" or val in RESERVED:
            self.error("expected an index name")
        self.k += 1
        return val

    def coef(self):
        val = self.toks[self.k][1]
        self.k += 1
        self.expect("_{")
        i = self.iexpr()
        self.expect(",")
        j = self.iexpr()
        self.expect("}")
        return Coef(val, i, j)

    # index expressions
    def iexpr(self):
        node = self.iterm()
        while self.peek()[1] in ("+", "-"):
            op = self.toks[self.k][1]
            self.k += 1
            rhs = self.iterm()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def iterm(self):
        node = self.iatom()
        while self.accept("*"):
            node = Mul(node, self.iatom())
        return node

    def iatom(self):
        kind, val, _ = self.peek()
        if val == "-":
            self.k += 1
            return Neg(self.iatom())
        if kind == "num":
            if "/" in val:
                self.error("index arithmetic is integral")
            self.k += 1
            return Num(Fraction(int(val)))
        if val == "(":
            self.k += 1
            node = self.iexpr()
            self.expect(")")
            return node
        if kind == "name":
            if val in ("abs", "odd"):
                self.k += 1
                self.expect("(")
                arg = self.iexpr()
                self.expect(")")
                return Func(val, arg)
            if val in ("delta", "a", "b"):
                return self.coef()
            if val in ("m", "n"):
                self.k += 1
                return Var(val)
            return Var(self.name())
        self.error("expected an index expression")

    # conditions
    def condition(self):
        conds = [self.comparison()]
        while self.peek()[1] == "and":
            self.k += 1
            conds.append(self.comparison())
        return tuple(conds)

    def comparison(self):
        left = self.iexpr()
        kind, val, _ = self.peek()
        if val not in ("==", "!=", "<=", ">=", "<", ">"):
            self.error("expected a comparison operator")
        self.k += 1
        return (val, left, self.iexpr())


def parse_relation(text: str):
    p = _Parser(text)
    node = p.expr()
    p.done()
    return node


def parse_index(text: str):
    p = _Parser(text)
    node = p.iexpr()
    p.done()
    return node


def parse_condition(text: str) -> tuple:
    p = _Parser(text)
    cond = p.condition()
    p.done()
    return cond


# --- printer ------------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Neg: 2, Mul: 3, Pow: 4}


def _prec(node) -> int:
    return _PREC.get(type(node), 5)


def print_index(node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Coef):
        return f"{node.kind}_{{{print_index(node.i)},{print_index(node.j)}}}"
    if isinstance(node, Func):
        return f"{node.name}({print_index(node.arg)})"
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        right = print_index(node.right)
        if isinstance(node, Sub) and isinstance(node.right, (Add, Sub)) or isinstance(node.right, Neg):
            right = f"({right})"
        return print_index(node.left) + op + right
    if isinstance(node, Mul):
        parts = []
        for x in (node.left, node.right):
            s = print_index(x)
            parts.append(f"({s})" if isinstance(x, (Add, Sub, Neg)) else s)
        return " * ".join(parts)
    if isinstance(node, Neg):
        inner = print_index(node.arg)
        return f"-({inner})" if isinstance(node.arg, (Add, Sub, Neg)) else f"-{inner}"
    raise TypeError(f"not an index expression: {node!r}")


def print_relation(node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Coef):
        return print_index(node)
    if isinstance(node, Gen):
        if node.r is None:
            return f"{node.kind}_{{{print_index(node.i)}}}"
        return f"{node.kind}_{{{print_index(node.i)},{print_index(node.r)}}}"
    if isinstance(node, Bracket):
        return f"[{print_relation(node.left)}, {print_relation(node.right)}]"
    if isinstance(node, Anti):
        return f"{{{print_relation(node.left)}, {print_relation(node.right)}}}"
    if isinstance(node, AdPow):
        return f"ad({print_relation(node.x)})^{{{print_index(node.k)}}}({print_relation(node.y)})"
    if isinstance(node, Sym):
        return f"sym({', '.join(node.names)}; {print_relation(node.body)})"
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        right = print_relation(node.right)
        if _prec(node.right) <= 2:
            right = f"({right})"
        return print_relation(node.left) + op + right
    if isinstance(node, Neg):
        inner = print_relation(node.arg)
        return f"-({inner})" if _prec(node.arg) <= 3 else f"-{inner}"
    if isinstance(node, Mul):
        parts = []
        for x in (node.left, node.right):
            s = print_relation(x)
            parts.append(f"({s})" if _prec(x) < 3 else s)
        return " * ".join(parts)
    if isinstance(node, Pow):
        s = print_relation(node.base)
        return (f"({s})" if _prec(node.base) < 5 else s) + f"^{node.exp}"
    raise TypeError(f"not a relation node: {node!r}")


def print_condition(cond: tuple) -> str:
    return " and ".join(f"{print_index(l)} {op} {print_index(r)}" for op, l, r in cond)


# --- static analysis ----------------------------------------------------------

def free_indices(node) -> set:
    if isinstance(node, Var):
        return set() if node.name in ("m", "n") else {node.name}
    if isinstance(node, (Num, Param)):
        return set()
    if isinstance(node, Sym):
        return free_indices(node.body)
    out = set()
    for value in vars(node).values() if hasattr(node, "__dict__") else ():
        if isinstance(value, tuple):
            continue
        if value is not None and not isinstance(value, (str, int, Fraction)):
            out |= free_indices(value)
    return out


def generators(node) -> set:
    """All (kind) symbols a relation uses."""
    if isinstance(node, Gen):
        return {node.kind}
    out = set()
    if hasattr(node, "__dict__"):
        for value in vars(node).values():
            if value is not None and not isinstance(value, (str, int, Fraction, tuple)):
                out |= generators(value)
    return out


# --- index evaluation -----------------------------------------------------------

def eval_index(node, env: dict, size=None) -> int:
    from ..superdata import b_coeff, cartan_affine

    if isinstance(node, Num):
        return int(node.value)
    if isinstance(node, Var):
        if node.name == "m" and size is not None:
            return size.m
        if node.name == "n" and size is not None:
            return size.n
        if node.name not in env:
            raise KeyError(f"unbound index {node.name!r}")
        return env[node.name]
    if isinstance(node, Add):
        return eval_index(node.left, env, size) + eval_index(node.right, env, size)
    if isinstance(node, Sub):
        return eval_index(node.left, env, size) - eval_index(node.right, env, size)
    if isinstance(node, Mul):
        return eval_index(node.left, env, size) * eval_index(node.right, env, size)
    if isinstance(node, Neg):
        return -eval_index(node.arg, env, size)
    if isinstance(node, Func):
        v = eval_index(node.arg, env, size)
        if node.name == "abs":
            return abs(v)
        return int(v % size.N in size.odd_nodes)
    if isinstance(node, Coef):
        i = eval_index(node.i, env, size) % size.N
        j = eval_index(node.j, env, size) % size.N
        if node.kind == "delta":
            return int(i == j)
        return cartan_affine(size, i, j) if node.kind == "a" else b_coeff(size, i, j)
    raise TypeError(f"not an index expression: {node!r}")


def check_condition(cond: tuple, env: dict, size) -> bool:
    ops = {
        "==": lambda a, b: a == b,
        "!=": lambda a, b: a != b,
        "<=": lambda a, b: a <= b,
        ">=": lambda a, b: a >= b,
        "<": lambda a, b: a < b,
        ">": lambda a, b: a > b,
    }
    return all(ops[op](eval_index(l, env, size), eval_index(r, env, size)) for op, l, r in cond)


def sym_instances(node: Sym, env: dict):
    """Environments for every permutation of the values bound to the sym names."""
    values = [env[n] for n in node.names]
    for perm in itertools.permutations(values):
        sub = dict(env)
        sub.update(zip(node.names, perm))
        yield sub
