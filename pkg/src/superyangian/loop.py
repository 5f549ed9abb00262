"""The loop superalgebra gl(m|n)[t, t^-1] + Cc + Cz and its invariant form.

A basis element is either ``(a, b, s)``, meaning ``E_{a,b} (x) t^s``, or one of
the centrals :data:`C` and :data:`Z`.  The bracket carries the two-cocycle

    s * delta_{s+u,0} * (str(x y) c + str(x) str(y) z),

which on sl(m|n) reduces to the usual ``str(xy) c`` term and on a pair
``(e_ab, e_ii)`` adds the ``z`` correction.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .superdata import SuperSize

C = ("c",)
Z = ("z",)
CENTRALS = (C, Z)


def is_central(term) -> bool:
    return len(term) == 1


@lru_cache(maxsize=None)
def term_parity(size: SuperSize, term) -> int:
    if is_central(term):
        return 0
    a, b, _ = term
    return (size.p(a) + size.p(b)) % 2


def term_mode(term) -> int:
    return 0 if is_central(term) else term[2]


def _term_key(term):
    return (1, term[0], 0, 0) if is_central(term) else (0, term[2], term[0], term[1])


def format_term(term) -> str:
    if is_central(term):
        return term[0]
    a, b, s = term
    return f"E[{a},{b}]({s})"


def _is_zero(x) -> bool:
    return not x


class LoopElement:
    """Finite linear combination of loop basis elements; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for t, c in terms.items():
                if not _is_zero(c):
                    clean[t] = c
        self.terms = clean

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, LoopElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, LoopElement):
            return NotImplemented
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out[t] + c if t in out else c
        return LoopElement(out)

    def __neg__(self):
        return LoopElement({t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LoopElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, LoopElement):
            return NotImplemented
        return LoopElement({t: c * scalar for t, c in self.terms.items()})

    __rmul__ = __mul__

    def parities(self, size: SuperSize) -> set:
        return {term_parity(size, t) for t in self.terms}

    def parity(self, size: SuperSize) -> int:
        ps = self.parities(size)
        if len(ps) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return ps.pop() if ps else 0

    def homogeneous_parts(self, size: SuperSize) -> dict:
        parts: dict = {}
        for t, c in self.terms.items():
            parts.setdefault(term_parity(size, t), {})[t] = c
        return {p: LoopElement(d) for p, d in parts.items()}

    def coeff(self, term):
        return self.terms.get(term, 0)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})*{format_term(t)}" for t, c in sorted(self.terms.items(), key=lambda tc: _term_key(tc[0]))
        )

    __repr__ = __str__


def unit(a: int, b: int, s: int = 0, coeff=1) -> LoopElement:
    return LoopElement({(a, b, s): Fraction(coeff)})


def central_c(coeff=1) -> LoopElement:
    return LoopElement({C: Fraction(coeff)})


def central_z(coeff=1) -> LoopElement:
    return LoopElement({Z: Fraction(coeff)})


def combine(pairs: Iterable) -> LoopElement:
    out: dict = {}
    for t, c in pairs:
        out[t] = out[t] + c if t in out else c
    return LoopElement(out)


@lru_cache(maxsize=None)
def bracket_terms(size: SuperSize, x, y) -> tuple:
    """Super-bracket of two basis elements as a tuple of (term, integer coefficient)."""
    if is_central(x) or is_central(y):
        return ()
    a, b, s = x
    c, d, u = y
    p, sg = size.p, size.sign
    out: dict = {}
    if b == c:
        out[(a, d, s + u)] = out.get((a, d, s + u), 0) + 1
    if d == a:
        koszul = -1 if ((p(a) + p(b)) * (p(c) + p(d))) % 2 else 1
        out[(c, b, s + u)] = out.get((c, b, s + u), 0) - koszul
    if s + u == 0 and s != 0:
        if a == d and b == c:
            out[C] = out.get(C, 0) + s * sg(a)
        if a == b and c == d:
            out[Z] = out.get(Z, 0) + s * sg(a) * sg(c)
    return tuple((t, k) for t, k in out.items() if k)


def bracket(size: SuperSize, x: LoopElement, y: LoopElement) -> LoopElement:
    out: dict = {}
    for tx, cx in x.terms.items():
        for ty, cy in y.terms.items():
            for t, k in bracket_terms(size, tx, ty):
                v = cx * cy * k
                out[t] = out[t] + v if t in out else v
    return LoopElement(out)


def kappa_terms(size: SuperSize, x, y) -> int:
    if is_central(x) or is_central(y):
        return 0
    a, b, s = x
    c, d, u = y
    if s + u == 0 and a == d and b == c:
        return size.sign(a)
    return 0


def kappa(size: SuperSize, x: LoopElement, y: LoopElement):
    total = Fraction(0)
    for tx, cx in x.terms.items():
        for ty, cy in y.terms.items():
            k = kappa_terms(size, tx, ty)
            if k:
                total = cx * cy * k + total
    return total


def ad_power(size: SuperSize, x: LoopElement, k: int, y: LoopElement) -> LoopElement:
    if k < 0:
        raise ValueError("ad power must be non-negative")
    for _ in range(k):
        y = bracket(size, x, y)
    return y


def supertrace(size: SuperSize, x: LoopElement):
    """Supertrace of the mode-0 matrix part (centrals ignored)."""
    total = Fraction(0)
    for t, c in x.terms.items():
        if not is_central(t) and t[0] == t[1]:
            total = c * size.sign(t[0]) + total
    return total
