"""Exact coefficients: rationals and polynomials in the deformation parameters.

Rationals are :class:`fractions.Fraction`.  :class:`ParamPoly` is a sparse
polynomial over the rationals in the four formal parameters ``e1``, ``e2``,
``alpha`` and ``lvl`` (the level ``c``).  ``hbar`` is not a variable; it is
the polynomial ``e1 + e2``.

Module computations are generic in the coefficient type: anything closed
under ``+ - *`` with a meaningful ``bool`` works.  Sampled runs use
``gmpy2.mpq`` (:data:`Q`) inside module vectors for speed; it compares and
hashes equal to the corresponding ``Fraction``.  Symbolic runs use ``ParamPoly``.
"""
from __future__ import annotations

import numbers
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

import gmpy2

PARAMS = ("e1", "e2", "alpha", "lvl")
_INDEX = {name: k for k, name in enumerate(PARAMS)}

Rat = Fraction
Scalar = Union[int, Fraction, "ParamPoly"]


Q = gmpy2.mpq


def fast(x):
    """Rationals become :data:`Q`; anything else (e.g. ParamPoly) is returned unchanged."""
    if isinstance(x, numbers.Rational):
        return Q(x.numerator, x.denominator)
    return x


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def format_rat(q) -> str:
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


class ParamPoly:
    """Immutable sparse polynomial in (e1, e2, alpha, lvl) with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) != len(PARAMS):
                    raise ValueError(f"exponent vector {mono} has wrong length")
                coeff = as_fraction(coeff)
                if coeff:
                    clean[tuple(int(e) for e in mono)] = coeff
        self._terms = clean
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, value) -> "ParamPoly":
        return cls({(0,) * len(PARAMS): value})

    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        if name not in _INDEX:
            raise KeyError(f"unknown parameter {name!r}")
        mono = [0] * len(PARAMS)
        mono[_INDEX[name]] = 1
        return cls({tuple(mono): 1})

    @classmethod
    def coerce(cls, x) -> "ParamPoly":
        if isinstance(x, ParamPoly):
            return x
        return cls.const(as_fraction(x))

    # inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * len(PARAMS), Fraction(0))

    def variables(self) -> set:
        return {PARAMS[k] for m in self._terms for k, e in enumerate(m) if e}

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self._terms == other._terms
        if isinstance(other, numbers.Rational):
            return self._terms == ParamPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (ParamPoly, numbers.Rational)):
            return NotImplemented
        other = ParamPoly.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (ParamPoly, numbers.Rational)):
            return NotImplemented
        return self + (-ParamPoly.coerce(other))

    def __rsub__(self, other):
        return ParamPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, numbers.Rational):
            return ParamPoly({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return ParamPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, numbers.Rational):
            other = as_fraction(other)
            return ParamPoly({m: c / other for m, c in self._terms.items()})
        if isinstance(other, ParamPoly) and other.is_constant() and other:
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = ParamPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    # evaluation -------------------------------------------------------
    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for k, e in enumerate(m):
                if e:
                    name = PARAMS[k]
                    if name not in values:
                        raise KeyError(f"parameter {name!r} is not assigned")
                    term *= as_fraction(values[name]) ** e
            total += term
        return total

    def substitute(self, name: str, num: "ParamPoly", den: "ParamPoly") -> "ParamPoly":
        """Return ``den**d * self(name := num/den)`` where ``d`` is the degree in ``name``.

        The result is a polynomial; it vanishes exactly when ``self`` vanishes on
        the hypersurface ``den * name = num`` (for ``den`` not identically zero).
        """
        k = _INDEX[name]
        d = max((m[k] for m in self._terms), default=0)
        out = ParamPoly()
        num_pows = [ParamPoly.const(1)]
        den_pows = [ParamPoly.const(1)]
        for _ in range(d):
            num_pows.append(num_pows[-1] * num)
            den_pows.append(den_pows[-1] * den)
        for m, c in self._terms.items():
            rest = list(m)
            e = rest[k]
            rest[k] = 0
            out = out + ParamPoly({tuple(rest): c}) * num_pows[e] * den_pows[d - e]
        return out

    # text form --------------------------------------------------------
    def sorted_terms(self):
        # lexicographic in (e1, e2, alpha, lvl), highest first
        return sorted(self._terms.items(), key=lambda mc: mc[0], reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = " ".join(
                PARAMS[k] if e == 1 else f"{PARAMS[k]}^{e}" for k, e in enumerate(m) if e
            )
            parts.append(f"{format_rat(c)} * {mono}" if mono else format_rat(c))
        return " + ".join(parts)

    def __repr__(self):
        return f"ParamPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "ParamPoly":
        """Parse the textual form produced by ``str``."""
        text = text.strip()
        if text == "0":
            return cls()
        out = cls()
        for chunk in text.split(" + "):
            chunk = chunk.strip()
            if " * " in chunk:
                coeff, mono_text = chunk.split(" * ", 1)
            elif re.fullmatch(r"-?\d+(/\d+)?", chunk):
                coeff, mono_text = chunk, ""
            else:
                coeff, mono_text = "1", chunk
            mono = [0] * len(PARAMS)
            for factor in mono_text.split():
                name, _, exp = factor.partition("^")
                if name not in _INDEX:
                    raise ValueError(f"unknown parameter {name!r} in {text!r}")
                mono[_INDEX[name]] += int(exp) if exp else 1
            out = out + cls({tuple(mono): Fraction(coeff)})
        return out


E1 = ParamPoly.var("e1")
E2 = ParamPoly.var("e2")
ALPHA = ParamPoly.var("alpha")
LEVEL = ParamPoly.var("lvl")
HBAR = E1 + E2


def poly_arith(op: str, a, b=None) -> ParamPoly:
    a = ParamPoly.coerce(a)
    if op == "neg":
        return -a
    b = ParamPoly.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def level_value(m: int, n: int, e1, e2, sign: str = "theorem") -> Fraction:
    """The level ``c`` forced by ``c * hbar = (n - m) * e1`` (``theorem``) or its negative (``proof``)."""
    e1, e2 = as_fraction(e1), as_fraction(e2)
    k = (n - m) if sign == "theorem" else (m - n)
    if sign not in ("theorem", "proof"):
        raise ValueError(f"unknown sign choice {sign!r}")
    return k * e1 / (e1 + e2)


@dataclass(frozen=True)
class ParamAssignment:
    """Rational values for the parameters.  With ``enforce_level`` the level is derived."""

    e1: Fraction
    e2: Fraction
    alpha: Fraction
    lvl: Fraction
    enforce_level: bool = True
    sign: str = "theorem"
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in ("e1", "e2", "alpha", "lvl"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        bad = [
            msg
            for msg, ok in (
                ("e1 == 0", self.e1 != 0),
                ("e2 == 0", self.e2 != 0),
                ("e1 + e2 == 0", self.e1 + self.e2 != 0),
                ("e1 - e2 == 0", self.e1 != self.e2),
            )
            if not ok
        ]
        if bad:
            raise ValueError("degenerate parameters: " + ", ".join(bad))

    @classmethod
    def with_level(cls, m, n, e1, e2, alpha, sign="theorem"):
        return cls(e1, e2, alpha, level_value(m, n, e1, e2, sign), True, sign)

    @property
    def hbar(self) -> Fraction:
        return self.e1 + self.e2

    def as_dict(self) -> dict:
        return {"e1": self.e1, "e2": self.e2, "alpha": self.alpha, "lvl": self.lvl}

    def shifted_level(self, delta) -> "ParamAssignment":
        return ParamAssignment(self.e1, self.e2, self.alpha, self.lvl + as_fraction(delta), False, self.sign)


def eval_poly(p, a: ParamAssignment | Mapping) -> Fraction:
    values = a.as_dict() if isinstance(a, ParamAssignment) else a
    return ParamPoly.coerce(p).evaluate(values)


def _small_rational(rng: random.Random) -> Fraction:
    while True:
        q = Fraction(rng.randint(-64, 64), rng.randint(1, 64))
        if q:
            return q


def sample_assignment(seed: int, size, enforce_level: bool = True, sign: str = "theorem") -> ParamAssignment:
    """Deterministic non-degenerate parameter sample with |num|, den <= 64."""
    rng = random.Random(f"params:{seed}:{size.m}:{size.n}")
    while True:
        e1, e2, alpha = _small_rational(rng), _small_rational(rng), _small_rational(rng)
        if e1 + e2 == 0 or e1 == e2:
            continue
        if enforce_level:
            return ParamAssignment.with_level(size.m, size.n, e1, e2, alpha, sign)
        return ParamAssignment(e1, e2, alpha, _small_rational(rng), False, sign)


def specialize(x, a: ParamAssignment):
    """Evaluate a ParamPoly at ``a``; plain rationals pass through."""
    if isinstance(x, ParamPoly):
        return x.evaluate(a.as_dict())
    return as_fraction(x)
