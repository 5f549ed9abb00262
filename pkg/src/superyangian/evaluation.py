"""The evaluation homomorphism as operators on smooth modules.

Images of the degree-one generators are finite words in the loop algebra plus
one-parameter families

    coeff * sum_{s >= 0} sum_{k = lo..hi} (-1)^{p(k)} E_{a,k}(-s-p) E_{k,b}(s+q),

which act on any vector by a finite sum because the right factor has
non-negative mode ``s + q`` and annihilates once it exceeds the depth.
Nothing here builds the completed enveloping algebra itself; every element is
known only through its action on vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

from .coeff import Q, fast
from .loop import LoopElement, bracket, central_c, unit
from .roots import dual_basis, inner, positive_roots
from .superdata import SuperSize, b_coeff, cartan_affine, chevalley
from .verma import ONE, VermaModule, add_into, mono_depth, scale_vec


@dataclass(frozen=True)
class OperatorWord:
    """coeff * factors[0] * factors[1] * ... (rightmost factor acts first)."""

    coeff: object
    factors: tuple


@dataclass(frozen=True)
class ModeSeries:
    """coeff * sum_{s>=0} sum_k (-1)^{p(k)} E_{L}(k, s) E_{R}(k, s).

    ``left``/``right`` are templates ``(row, col, offset, slope)`` where a row or
    column equal to ``"k"`` is the summation index and the mode is
    ``offset + slope * s``.  A series whose right factor has slope +1 terminates
    on every vector; otherwise a cutoff must be supplied when applying it.
    """

    coeff: object
    left: tuple
    right: tuple
    k_lo: int
    k_hi: int

    @classmethod
    def standard(cls, coeff, a, b, p, q, k_lo, k_hi):
        """coeff * sum_s sum_k (-1)^{p(k)} E_{a,k}(-s-p) E_{k,b}(s+q)."""
        return cls(coeff, (a, "k", -p, -1), ("k", b, q, 1), k_lo, k_hi)

    @property
    def terminating(self) -> bool:
        return self.right[3] == 1

    def factor(self, template, k, s):
        r, c, off, slope = template
        return (k if r == "k" else r, k if c == "k" else c, off + slope * s)


@dataclass
class OperatorExpr:
    parts: list = field(default_factory=list)

    def __add__(self, other):
        return OperatorExpr(self.parts + other.parts)

    def scaled(self, scalar) -> "OperatorExpr":
        out = []
        for part in self.parts:
            out.append(replace(part, coeff=part.coeff * scalar))
        return OperatorExpr(out)


def _word(coeff, *factors) -> OperatorWord:
    return OperatorWord(coeff, tuple(factors))


def prefactor(size: SuperSize, i: int, e1, alpha):
    """alpha - (m-n) e1 at the affine node, alpha - (i - 2[i>=m+1](i-m)) e1 otherwise."""
    m, n = size.m, size.n
    if i == 0:
        return alpha - (m - n) * e1
    shift = i - (2 * (i - m) if i >= m + 1 else 0)
    return alpha - shift * e1


MUTATIONS = ("flip_h0_word",)


def ev_gen(size: SuperSize, kind: str, i: int, r: int, e1, e2, alpha, mutations: Sequence[str] = ()) -> OperatorExpr:
    """Image of x+_{i,r}, x-_{i,r} or h_{i,r} (r in {0, 1}) as an operator expression."""
    size.check_node(i)
    if r not in (0, 1):
        raise ValueError("ev_gen covers r = 0, 1; use EvAction for higher modes")
    if kind not in ("x+", "x-", "h"):
        raise ValueError(f"unknown generator kind {kind!r}")
    for mut in mutations:
        if mut not in MUTATIONS:
            raise ValueError(f"unknown mutation {mut!r}")
    one = Fraction(1)
    if r == 0:
        return OperatorExpr([_word(one, chevalley(size, "affine", kind, i))])
    N, sg = size.N, size.sign
    hbar = e1 + e2
    pref = prefactor(size, i, e1, alpha)
    base = _word(pref, chevalley(size, "affine", kind, i))
    S = ModeSeries.standard
    if kind == "x+":
        if i == 0:
            return OperatorExpr([base, S(hbar, N, 1, 0, 1, 1, N)])
        return OperatorExpr([base, S(hbar, i, i + 1, 0, 0, 1, i), S(hbar, i, i + 1, 1, 1, i + 1, N)])
    if kind == "x-":
        if i == 0:
            return OperatorExpr([base, S(-hbar, 1, N, 1, 0, 1, N)])
        h = sg(i) * hbar
        return OperatorExpr([base, S(h, i + 1, i, 0, 0, 1, i), S(h, i + 1, i, 1, 1, i + 1, N)])
    if i == 0:
        flip = -1 if "flip_h0_word" in mutations else 1
        word = _word(flip * hbar, unit(N, N), unit(1, 1) - central_c())
        return OperatorExpr([base, word, S(-hbar, N, N, 0, 0, 1, N), S(-hbar, 1, 1, 1, 1, 1, N)])
    pe = (size.p(i) + size.p(i + 1)) % 2
    word = _word(-((-1) ** pe) * hbar, unit(i, i), unit(i + 1, i + 1))
    hi, hj = sg(i) * hbar, -sg(i + 1) * hbar
    return OperatorExpr([
        base,
        word,
        S(hi, i, i, 0, 0, 1, i),
        S(hi, i, i, 1, 1, i + 1, N),
        S(hj, i + 1, i + 1, 0, 0, 1, i),
        S(hj, i + 1, i + 1, 1, 1, i + 1, N),
    ])


# --- application --------------------------------------------------------

def _apply_word_mono(module: VermaModule, word: OperatorWord, mono) -> dict:
    v = {mono: ONE}
    v = module.act_word(word.factors, v)
    return scale_vec(v, word.coeff) if v else {}


def _apply_series_mono(module: VermaModule, series: ModeSeries, mono, cutoff=None) -> dict:
    size = module.size
    out: dict = {}
    d = mono_depth(mono)
    if series.terminating:
        # right factor mode off + s must not exceed the depth
        s_max = d - series.right[2]
    else:
        if cutoff is None:
            raise ValueError("non-terminating series needs an explicit cutoff")
        s_max = cutoff
    for s in range(0, s_max + 1):
        for k in range(series.k_lo, series.k_hi + 1):
            rt = series.factor(series.right, k, s)
            inner_v = module.act_term(rt, mono)
            if not inner_v:
                continue
            lt = series.factor(series.left, k, s)
            add_into(out, module.act_term_vec(lt, inner_v), sg_k(size, k) * series.coeff)
    return out


def sg_k(size: SuperSize, k: int) -> int:
    return size.sign(k)


def apply_mono(module: VermaModule, expr: OperatorExpr, mono, cutoff=None) -> dict:
    out: dict = {}
    for part in expr.parts:
        if isinstance(part, OperatorWord):
            add_into(out, _apply_word_mono(module, part, mono))
        else:
            add_into(out, _apply_series_mono(module, part, mono, cutoff))
    return out


def apply(module: VermaModule, expr: OperatorExpr, v: dict, cutoff=None) -> dict:
    out: dict = {}
    for mono, c in v.items():
        add_into(out, apply_mono(module, expr, mono, cutoff), c)
    return out


def series_term(module: VermaModule, series: ModeSeries, s: int, v: dict) -> dict:
    """The single s-th term of a series applied to v (used to audit truncation)."""
    out: dict = {}
    for mono, c in v.items():
        for k in range(series.k_lo, series.k_hi + 1):
            inner_v = module.act_term(series.factor(series.right, k, s), mono)
            if inner_v:
                add_into(out, module.act_term_vec(series.factor(series.left, k, s), inner_v), c * sg_k(module.size, k) * series.coeff)
    return out


# --- the anti-automorphism omega -----------------------------------------

def omega_loop(x: LoopElement, mode_flip: bool = True) -> LoopElement:
    """E_{a,b}(r) -> E_{b,a}(-r); c, z fixed.

    With ``mode_flip=False`` this is the literal textbook form
    (-1)^r E_{b,a}(r); it is not compatible with the affine Chevalley images
    and is kept only so the discrepancy can be demonstrated.
    """
    out = {}
    for t, coef in x.items():
        if len(t) == 1:
            out[t] = coef
        elif mode_flip:
            a, b, r = t
            out[(b, a, -r)] = coef
        else:
            a, b, r = t
            out[(b, a, r)] = coef * (-1 if r % 2 else 1)
    return LoopElement(out)


def omega_transform(expr: OperatorExpr, mode_flip: bool = True) -> OperatorExpr:
    """Apply omega: words are reversed and transposed; series map to series.

    omega(E_{a,k}(-s-p) E_{k,b}(s+q)) = E_{b,k}(-s-q) E_{k,a}(s+p), so a
    terminating family stays terminating (slopes swap sign together with the order).
    """
    sgn_mode = -1 if mode_flip else 1
    parts = []
    for part in expr.parts:
        if isinstance(part, OperatorWord):
            parts.append(OperatorWord(part.coeff, tuple(omega_loop(f, mode_flip) for f in reversed(part.factors))))
        else:
            (lr, lc, loff, lsl), (rr, rc, roff, rsl) = part.left, part.right
            # the literal form multiplies by (-1)^{mode} of both factors, i.e. (-1)^{loff + roff}
            sign = -1 if not mode_flip and (loff + roff) % 2 else 1
            parts.append(ModeSeries(
                part.coeff * sign,
                (rc, rr, sgn_mode * roff, sgn_mode * rsl),
                (lc, lr, sgn_mode * loff, sgn_mode * lsl),
                part.k_lo,
                part.k_hi,
            ))
    return OperatorExpr(parts)


def omega_scale(size: SuperSize, i: int) -> int:
    """omega(ev(x+_{i,1})) = omega_scale * ev(x-_{i,1}), i.e. (-1)^{p(i)} with p(0) = p(m+n)."""
    return size.sign(i if i else size.N)


# --- generator actions ------------------------------------------------------

class GeneratorAction:
    """Yangian generators acting on some carrier, memoized per (generator, basis key).

    Subclasses supply the generators they know explicitly through
    :meth:`_explicit`; everything else follows the recursion

        x+-_{i,r+1} = +-(1/a_{j,i}) [h~_{j,1}, x+-_{i,r}] (+ b_{j,i} (e1-e2)/2 x+-_{i,r} when j != i),
        h_{i,r+1}   = [x+_{i,r+1}, x-_{i,0}],

    with j = i off the odd nodes and j = i+1 at them, and
    h~_{j,1} = h_{j,1} - (hbar/2) h_{j,0}^2.
    """

    def __init__(self, size: SuperSize, e1, e2):
        self.size = size
        self.e1, self.e2 = fast(e1), fast(e2)
        self.hbar = e1 + e2
        self._cache: dict = {}

    def parity(self, kind: str, i: int) -> int:
        if kind in ("h", "ht", "Jh", "v"):
            return 0
        return self.size.node_parity(i)

    def gen(self, kind: str, i: int, r: int = 0) -> Callable[[dict], dict]:
        return lambda v: self.apply_gen(kind, i, r, v)

    def apply_gen(self, kind: str, i: int, r: int, v: dict) -> dict:
        out: dict = {}
        for key, c in v.items():
            add_into(out, self.gen_key(kind, i, r, key), c)
        return out

    def gen_key(self, kind: str, i: int, r: int, key) -> dict:
        ck = (kind, i, r, key)
        res = self._cache.get(ck)
        if res is None:
            res = self._explicit(kind, i, r, key)
            if res is None:
                res = self._recursive(kind, i, r, key)
            self._cache[ck] = res
        return res

    # backwards-compatible name for single-module keys
    gen_mono = gen_key

    def clear_cache(self):
        self._cache.clear()

    def cache_size(self) -> int:
        return len(self._cache)

    def _explicit(self, kind, i, r, key):
        raise NotImplementedError

    def _recursive(self, kind, i, r, key) -> dict:
        self.size.check_node(i)
        v = {key: ONE}
        if kind == "ht":
            out = dict(self.gen_key("h", i, 1, key))
            hh = self.apply_gen("h", i, 0, self.apply_gen("h", i, 0, v))
            return add_into(out, hh, -self.hbar / 2)
        if kind not in ("x+", "x-", "h") or r < 1:
            raise ValueError(f"no rule for generator {kind}_{{{i},{r}}}")
        if kind == "h":
            p = self.parity("x+", i)
            a = self.apply_gen("x+", i, r, self.apply_gen("x-", i, 0, v))
            b = self.apply_gen("x-", i, 0, self.apply_gen("x+", i, r, v))
            return add_into(a, b, 1 if p else -1)
        size = self.size
        sgn = 1 if kind == "x+" else -1
        j = i + 1 if i in size.odd_nodes else i
        a_ji = cartan_affine(size, j, i)
        if a_ji == 0:
            raise ZeroDivisionError(f"a_{{{j},{i}}} = 0 in the recursion")
        comm = add_into(
            self.apply_gen("ht", j, 1, self.apply_gen(kind, i, r - 1, v)),
            self.apply_gen(kind, i, r - 1, self.apply_gen("ht", j, 1, v)),
            -1,
        )
        out = scale_vec(comm, Q(sgn, a_ji))
        if j != i:
            add_into(out, self.apply_gen(kind, i, r - 1, v), b_coeff(size, j, i) * (self.e1 - self.e2) / 2)
        return out


class EvAction(GeneratorAction):
    """All Yangian generators (any r) and J-elements acting on one Verma module via ev.

    Degree-one generators use the explicit images (or, with
    ``recursive_degree_one``, x+-_{i,1} is rebuilt from the recursion);
    r >= 2 always follows the recursion.
    """

    def __init__(self, module: VermaModule, e1, e2, alpha, mutations: Sequence[str] = (), recursive_degree_one=False):
        super().__init__(module.size, e1, e2)
        self.module = module
        self.alpha = fast(alpha)
        self.mutations = tuple(mutations)
        self.recursive_degree_one = recursive_degree_one
        self._exprs: dict = {}

    def expr(self, kind: str, i: int, r: int) -> OperatorExpr:
        key = (kind, i, r)
        if key not in self._exprs:
            self._exprs[key] = ev_gen(self.size, kind, i, r, self.e1, self.e2, self.alpha, self.mutations)
        return self._exprs[key]

    def _explicit(self, kind, i, r, mono):
        if kind in ("x+", "x-", "h"):
            if r == 0 or (r == 1 and (kind == "h" or not self.recursive_degree_one)):
                return apply_mono(self.module, self.expr(kind, i, r), mono)
            return None
        if kind in ("Jh", "Jx+", "Jx-", "v", "w+", "w-"):
            return self._j_part(kind, i, mono)
        return None

    # -- J elements -----------------------------------------------------------
    def _root_pairs(self, cutoff: int):
        return [pair for root in positive_roots(self.size, cutoff) for pair in dual_basis(self.size, root)]

    def _j_part(self, kind, i, mono) -> dict:
        size, module = self.size, self.module
        v = {mono: ONE}
        half = self.hbar / 2
        d = mono_depth(mono)
        if kind == "Jh":
            out = dict(self.gen_key("h", i, 1, mono))
            return add_into(out, self.gen_key("v", i, 0, mono))
        if kind in ("Jx+", "Jx-"):
            sub = "w+" if kind == "Jx+" else "w-"
            out = dict(self.gen_key(kind[1:], i, 1, mono))
            return add_into(out, self.gen_key(sub, i, 0, mono))
        out: dict = {}
        if kind == "v":
            # only roots of mode <= depth can act nontrivially through x_alpha
            for pair in self._root_pairs(d):
                w = inner(size, pair.root, i)
                if not w:
                    continue
                add_into(out, module.act(pair.x_minus, module.act(pair.x_plus, v)), w * half)
            h = chevalley(size, "affine", "h", i)
            add_into(out, module.act(h, module.act(h, v)), -half)
            return out
        if kind == "w+":
            xp = chevalley(size, "affine", "x+", i)
            for pair in self._root_pairs(d):
                inner_v = module.act(pair.x_plus, v)
                if inner_v:
                    add_into(out, module.act(bracket(size, xp, pair.x_minus), inner_v), -half)
            return out
        # w-_i carries -hbar/2 like w+_i; the opposite sign breaks every x- identity.
        # [x_alpha, x-_0] has mode s-1, so roots up to mode depth+1 contribute.
        xm = chevalley(size, "affine", "x-", i)
        for pair in self._root_pairs(d + 1):
            inner_v = module.act(bracket(size, pair.x_plus, xm), v)
            if inner_v:
                add_into(out, module.act(pair.x_minus, inner_v), -half)
        return out
