"""Verma-type highest-weight modules of gl(m|n)^ and their tensor squares.

A vector is a ``dict`` from PBW monomials to coefficients.  A monomial is a
sorted tuple of lowering basis elements ``(a, b, s)`` (``s < 0``, or ``s = 0``
with ``a > b``) standing to the left of the highest-weight vector.  The
empty tuple is the highest-weight vector itself.

Raising and Cartan elements are commuted to the right with Koszul signs until
they reach the highest-weight vector; lowering elements are inserted into
normal order.  Positive modes larger than the depth of a monomial annihilate
it, which is what makes completed (infinite-sum) operators act by finite sums.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .coeff import Q, fast
from .loop import C, Z, LoopElement, bracket_terms, is_central, term_parity
from .superdata import SuperSize

ONE = Q(1)


def is_lowering(term) -> bool:
    if is_central(term):
        return False
    a, b, s = term
    return s < 0 or (s == 0 and a > b)


def order_key(term):
    # mode 0 first, then more negative modes; ties by row, then column
    a, b, s = term
    return (-s, a, b)


@lru_cache(maxsize=None)
def mono_depth(mono) -> int:
    return -sum(t[2] for t in mono)


def depth(v: dict) -> int:
    return max((mono_depth(m) for m in v), default=0)


def add_into(acc: dict, vec: dict, scale=1) -> dict:
    for k, c in vec.items():
        val = c if scale == 1 else c * scale
        if k in acc:
            val = acc[k] + val
            if val:
                acc[k] = val
            else:
                del acc[k]
        elif val:
            acc[k] = val
    return acc


def scale_vec(vec: dict, scale) -> dict:
    if not scale:
        return {}
    return {k: c * scale for k, c in vec.items() if c * scale}


def vec_sub(u: dict, v: dict) -> dict:
    return add_into(dict(u), v, -1)


def linear_combination(pairs: Iterable) -> dict:
    acc: dict = {}
    for vec, scale in pairs:
        add_into(acc, vec, scale)
    return acc


@dataclass(frozen=True)
class HighestWeight:
    weights: tuple
    level: object

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))


class VermaModule:
    """Induced module with E_{a,a}(0) acting by weights[a-1], c by ``level`` and z by 1."""

    def __init__(self, size: SuperSize, hw: HighestWeight):
        if len(hw.weights) != size.N:
            raise ValueError(f"need {size.N} weights, got {len(hw.weights)}")
        self.size = size
        self.hw = hw
        self._weights = [fast(w) for w in hw.weights]
        self._level = fast(hw.level)
        self._act_cache: dict = {}
        self._ins_cache: dict = {}

    def __repr__(self):
        return f"VermaModule({self.size.m}|{self.size.n}, weights={list(map(str, self.hw.weights))}, level={self.hw.level})"

    # --- vectors ---------------------------------------------------------
    def highest_weight_vector(self) -> dict:
        return {(): ONE}

    def mono_parity(self, mono) -> int:
        return sum(term_parity(self.size, t) for t in mono) % 2

    def normal_form(self, factors: Sequence) -> dict:
        """Normal-order an arbitrary word of lowering elements applied to v_hw."""
        v = self.highest_weight_vector()
        for t in reversed(factors):
            v = self.act_term_vec(t, v)
        return v

    # --- action ----------------------------------------------------------
    def act_term(self, x, mono) -> dict:
        key = (x, mono)
        cached = self._act_cache.get(key)
        if cached is not None:
            return cached
        res = self._act_term(x, mono)
        self._act_cache[key] = res
        return res

    def _act_term(self, x, mono) -> dict:
        if x == C:
            return {mono: self._level} if self._level else {}
        if x == Z:
            return {mono: ONE}
        if is_lowering(x):
            return self._insert(x, mono)
        if x[2] > mono_depth(mono):
            return {}
        if not mono:
            a, b, s = x
            if a == b and s == 0:
                w = self._weights[a - 1]
                return {(): w} if w else {}
            return {}
        size = self.size
        y, rest = mono[0], mono[1:]
        out: dict = {}
        inner = self.act_term(x, rest)
        if inner:
            sgn = -1 if term_parity(size, x) * term_parity(size, y) else 1
            for m, c in inner.items():
                add_into(out, self._insert(y, m), c * sgn)
        for t, k in bracket_terms(size, x, y):
            add_into(out, self.act_term(t, rest), k)
        return out

    def _insert(self, y, mono) -> dict:
        key = (y, mono)
        cached = self._ins_cache.get(key)
        if cached is not None:
            return cached
        res = self._insert_uncached(y, mono)
        self._ins_cache[key] = res
        return res

    def _insert_uncached(self, y, mono) -> dict:
        size = self.size
        if not mono or order_key(y) < order_key(mono[0]):
            return {(y,) + mono: ONE}
        z = mono[0]
        py = term_parity(size, y)
        if y == z:
            if not py:
                return {(y,) + mono: ONE}
            # y odd: y*y = (1/2)[y, y]
            out: dict = {}
            for t, k in bracket_terms(size, y, y):
                add_into(out, self.act_term(t, mono[1:]), Q(k, 2))
            return out
        rest = mono[1:]
        out = {}
        sgn = -1 if py * term_parity(size, z) else 1
        for m, c in self._insert(y, rest).items():
            add_into(out, self._insert(z, m), c * sgn)
        for t, k in bracket_terms(size, y, z):
            add_into(out, self.act_term(t, rest), k)
        return out

    def act_term_vec(self, x, v: dict) -> dict:
        out: dict = {}
        for m, c in v.items():
            add_into(out, self.act_term(x, m), c)
        return out

    def act(self, x: LoopElement, v: dict) -> dict:
        out: dict = {}
        for t, cx in x.items():
            for m, c in v.items():
                add_into(out, self.act_term(t, m), cx * c)
        return out

    def act_word(self, factors: Sequence[LoopElement], v: dict) -> dict:
        for x in reversed(factors):
            v = self.act(x, v)
            if not v:
                break
        return v

    def clear_cache(self):
        self._act_cache.clear()
        self._ins_cache.clear()

    def cache_size(self) -> int:
        return len(self._act_cache) + len(self._ins_cache)


def lowering_generators(size: SuperSize, depth_cutoff: int) -> list:
    N = size.N
    gens = [(a, b, 0) for a in range(1, N + 1) for b in range(1, N + 1) if a > b]
    for s in range(1, depth_cutoff + 1):
        gens.extend((a, b, -s) for a in range(1, N + 1) for b in range(1, N + 1))
    return sorted(gens, key=order_key)


def pbw_monomials(size: SuperSize, D: int, L: int) -> list:
    """All normal-ordered monomials with depth <= D and at most L mode-0 factors."""
    if D < 0 or L < 0:
        raise ValueError("depth and zero-mode length must be non-negative")
    gens = lowering_generators(size, D)
    out = []

    def extend(start, prefix, dep, zeros):
        out.append(tuple(prefix))
        for k in range(start, len(gens)):
            g = gens[k]
            nd = dep - g[2]
            nz = zeros + (g[2] == 0)
            if nd > D or nz > L:
                continue
            odd = term_parity(size, g)
            prefix.append(g)
            extend(k + 1 if odd else k, prefix, nd, nz)
            prefix.pop()

    extend(0, [], 0, 0)
    return sorted(out, key=lambda m: (mono_depth(m), len(m), [order_key(t) for t in m]))


def pbw_basis(size: SuperSize, hw: HighestWeight | None, D: int, L: int) -> list:
    return [{m: Fraction(1)} for m in pbw_monomials(size, D, L)]


def format_mono(mono) -> str:
    if not mono:
        return "v"
    return "*".join(f"E[{a},{b}]({s})" for a, b, s in mono) + "*v"


class TensorModule:
    """M1 (x) M2 with the Koszul rule (x (x) y)(v (x) w) = (-1)^{p(y)p(v)} xv (x) yw."""

    def __init__(self, left: VermaModule, right: VermaModule):
        if left.size != right.size:
            raise ValueError("tensor factors must have the same (m|n)")
        self.size = left.size
        self.left = left
        self.right = right

    def highest_weight_vector(self) -> dict:
        return {((), ()): ONE}

    def pair_parity(self, key) -> int:
        return (self.left.mono_parity(key[0]) + self.right.mono_parity(key[1])) % 2

    def apply_left(self, op, v: dict) -> dict:
        """(op (x) 1) v where ``op(vec) -> vec`` acts on the first factor."""
        out: dict = {}
        for (m1, m2), c in v.items():
            for k1, c1 in op({m1: ONE}).items():
                add_into(out, {(k1, m2): c1}, c)
        return out

    def apply_right(self, op, parity: int, v: dict) -> dict:
        """(1 (x) op) v for an operator of the given parity on the second factor."""
        out: dict = {}
        for (m1, m2), c in v.items():
            sgn = -1 if parity and self.left.mono_parity(m1) else 1
            for k2, c2 in op({m2: ONE}).items():
                add_into(out, {(m1, k2): c2}, c * sgn)
        return out

    def apply_pair(self, op1, op2, parity2: int, v: dict) -> dict:
        """(op1 (x) op2) v; op2 has parity ``parity2``."""
        out: dict = {}
        for (m1, m2), c in v.items():
            sgn = -1 if parity2 and self.left.mono_parity(m1) else 1
            r2 = op2({m2: ONE})
            if not r2:
                continue
            r1 = op1({m1: ONE})
            for k1, c1 in r1.items():
                for k2, c2 in r2.items():
                    add_into(out, {(k1, k2): c1 * c2}, c * sgn)
        return out


def tensor_basis(b1: list, b2: list) -> list:
    out = []
    for v, w in itertools.product(b1, b2):
        (m1, c1), = v.items()
        (m2, c2), = w.items()
        out.append({(m1, m2): c1 * c2})
    return out
