"""Affine roots of sl(m|n)^, kappa-dual root vectors, reflections and tau_i."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .loop import LoopElement, bracket, combine, kappa, unit
from .superdata import SuperSize, cartan_affine, chevalley


@dataclass(frozen=True, order=True)
class AffineRoot:
    """``eps_a - eps_b + s*delta`` (real, ``a != b``) or ``s*delta`` (imaginary, ``a = b = 0``)."""

    s: int
    a: int = 0
    b: int = 0

    @classmethod
    def real(cls, a: int, b: int, s: int = 0) -> "AffineRoot":
        if a == b:
            raise ValueError("a real root needs a != b")
        return cls(s, a, b)

    @classmethod
    def imaginary(cls, s: int) -> "AffineRoot":
        if s == 0:
            raise ValueError("0 is not a root")
        return cls(s, 0, 0)

    @property
    def is_real(self) -> bool:
        return self.a != 0

    @property
    def is_positive(self) -> bool:
        if self.is_real:
            return self.s > 0 or (self.s == 0 and self.a < self.b)
        return self.s > 0

    def __neg__(self):
        return AffineRoot(-self.s, self.b, self.a)

    def parity(self, size: SuperSize) -> int:
        return (size.p(self.a) + size.p(self.b)) % 2 if self.is_real else 0

    def __str__(self):
        if self.is_real:
            return f"eps{self.a}-eps{self.b}+{self.s}d"
        return f"{self.s}d"


def _sort_key(root: AffineRoot):
    return (root.s, 0 if root.is_real else 1, root.a, root.b)


def positive_roots(size: SuperSize, cutoff: int) -> list:
    """All positive roots with mode <= cutoff, ordered by (mode, kind, (a, b))."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    N = size.N
    out = [AffineRoot.real(a, b, 0) for a in range(1, N + 1) for b in range(a + 1, N + 1)]
    for s in range(1, cutoff + 1):
        out.extend(AffineRoot.real(a, b, s) for a in range(1, N + 1) for b in range(1, N + 1) if a != b)
        out.append(AffineRoot.imaginary(s))
    return sorted(out, key=_sort_key)


def root_of_term(term) -> AffineRoot | None:
    a, b, s = term
    if a != b:
        return AffineRoot.real(a, b, s)
    return AffineRoot.imaginary(s) if s else None


@dataclass(frozen=True)
class DualPair:
    root: AffineRoot
    index: int
    x_plus: LoopElement
    x_minus: LoopElement


@lru_cache(maxsize=None)
def cartan_gram_inverse(size: SuperSize) -> tuple:
    """Inverse of the finite Cartan matrix, exact (Gauss-Jordan over Q)."""
    r = size.N - 1
    M = [[Fraction(cartan_affine(size, i, j)) for j in range(1, r + 1)] + [Fraction(int(i == k)) for k in range(1, r + 1)]
         for i in range(1, r + 1)]
    for col in range(r):
        piv = next((row for row in range(col, r) if M[row][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("finite Cartan matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for row in range(r):
            if row != col and M[row][col] != 0:
                f = M[row][col]
                M[row] = [x - f * y for x, y in zip(M[row], M[col])]
    return tuple(tuple(row[r:]) for row in M)


def _cartan_mode(size: SuperSize, k: int, s: int) -> LoopElement:
    h = chevalley(size, "finite", "h", k)
    return combine(((a, b, s), c) for (a, b, _), c in h.items())


def dual_basis(size: SuperSize, root: AffineRoot, rotation=None) -> list:
    """kappa-dual basis of g_root and g_{-root} for a positive root.

    For imaginary roots the basis ``h_k (x) t^s`` may be replaced by
    ``sum_l R[k][l] h_l (x) t^s`` via an invertible ``rotation`` matrix R; the
    dual side is adjusted so that the pairing stays the identity.
    """
    if not root.is_positive:
        raise ValueError(f"{root} is not a positive root")
    if root.is_real:
        a, b, s = root.a, root.b, root.s
        return [DualPair(root, 1, unit(a, b, s), unit(b, a, -s, size.sign(a)))]
    s, r = root.s, size.N - 1
    ginv = cartan_gram_inverse(size)
    plus = [_cartan_mode(size, k, s) for k in range(1, r + 1)]
    minus_basis = [_cartan_mode(size, k, -s) for k in range(1, r + 1)]
    # dual of h_k is sum_l Ginv[k][l] h_l
    dual = [_lin(ginv[k], minus_basis) for k in range(r)]
    if rotation is not None:
        R = [[Fraction(x) for x in row] for row in rotation]
        Rinv_T = _transpose(_invert(R))
        plus = [_lin(R[k], plus) for k in range(r)]
        dual = [_lin(Rinv_T[k], dual) for k in range(r)]
    return [DualPair(root, k + 1, plus[k], dual[k]) for k in range(r)]


def _lin(coeffs, elems) -> LoopElement:
    out = LoopElement()
    for c, e in zip(coeffs, elems):
        if c:
            out = out + e * Fraction(c)
    return out


def _transpose(M):
    return [list(col) for col in zip(*M)]


def _invert(M):
    r = len(M)
    A = [list(row) + [Fraction(int(i == k)) for k in range(r)] for i, row in enumerate(M)]
    for col in range(r):
        piv = next((row for row in range(col, r) if A[row][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("rotation matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for row in range(r):
            if row != col and A[row][col] != 0:
                f = A[row][col]
                A[row] = [x - f * y for x, y in zip(A[row], A[col])]
    return [row[r:] for row in A]


# --- inner product --------------------------------------------------------

def simple_coords(size: SuperSize, root: AffineRoot) -> tuple:
    """Coordinates of ``root`` in the basis alpha_0, ..., alpha_{m+n-1}."""
    N = size.N
    coords = [0] * N
    s = root.s
    if root.is_real:
        a, b = root.a, root.b
        lo, hi, sgn = (a, b, 1) if a < b else (b, a, -1)
        for k in range(lo, hi):
            coords[k] += sgn
    for k in range(N):
        coords[k] += s
    return tuple(coords)


def inner(size: SuperSize, x, j: int) -> int:
    """``(x, alpha_j)``; ``x`` is an AffineRoot or a node index."""
    if isinstance(x, int):
        return cartan_affine(size, x, j)
    return sum(c * cartan_affine(size, i, j) for i, c in enumerate(simple_coords(size, x)) if c)


def _eps_form(size: SuperSize, root: AffineRoot, other: AffineRoot) -> int:
    def vec(r):
        v = {}
        if r.is_real:
            v[r.a] = v.get(r.a, 0) + 1
            v[r.b] = v.get(r.b, 0) - 1
        return v

    u, w = vec(root), vec(other)
    return sum(c * w.get(k, 0) * size.sign(k) for k, c in u.items())


def root_inner(size: SuperSize, x: AffineRoot, y: AffineRoot) -> int:
    return _eps_form(size, x, y)


# --- reflections and tau ------------------------------------------------

def _check_even_node(size: SuperSize, i: int) -> None:
    size.check_node(i)
    if i in (0, size.m) or cartan_affine(size, i, i) == 0:
        raise ValueError(f"reflection s_{i} is only defined for even nodes i != 0, m")


def reflect(size: SuperSize, i: int, root):
    """Simple reflection s_i applied to an AffineRoot, or to a simple root given by its node index."""
    _check_even_node(size, i)
    if isinstance(root, int):
        coords = [0] * size.N
        coords[root] = 1
        f = 2 * cartan_affine(size, i, root) // cartan_affine(size, i, i)
        coords[i] -= f
        return tuple(coords)
    if not root.is_real:
        return root
    swap = {i: i + 1, i + 1: i}
    return AffineRoot(root.s, swap.get(root.a, root.a), swap.get(root.b, root.b))


def _exp_ad(size: SuperSize, x: LoopElement, y: LoopElement, sign: int, max_terms: int = 4) -> LoopElement:
    total = y
    term = y
    k = 0
    while True:
        k += 1
        term = bracket(size, x, term) * Fraction(sign, k)
        if term.is_zero():
            return total
        if k >= max_terms:
            raise RuntimeError("exp(ad) did not terminate within the nilpotency guard")
        total = total + term


def tau(size: SuperSize, i: int, x: LoopElement, literal: bool = False) -> LoopElement:
    """exp(ad x+_i) exp(-ad f_i) exp(ad x+_i) applied to x, with f_i = (2 / a_ii) x-_i.

    The rescaling makes (x+_i, f_i) an sl(2)-pair with [h, x+] = 2 x+, so the
    triple exponential lifts the reflection s_i also where a_ii = -2.  With
    ``literal`` the unscaled f_i = x-_i is used.
    """
    _check_even_node(size, i)
    xp = chevalley(size, "affine", "x+", i)
    xm = chevalley(size, "affine", "x-", i)
    if not literal:
        xm = xm * Fraction(2, cartan_affine(size, i, i))
    y = _exp_ad(size, xp, x, 1)
    y = _exp_ad(size, xm, y, -1)
    return _exp_ad(size, xp, y, 1)


def root_vector_weight(size: SuperSize, x: LoopElement, j: int):
    """Return w if [Xi(h_j), x] = w * x, else None."""
    h = chevalley(size, "affine", "h", j)
    br = bracket(size, h, x)
    if br.is_zero():
        return 0
    t, c = next(iter(x.items()))
    w = br.coeff(t) / c
    return w if (br - x * w).is_zero() else None


def in_root_space(size: SuperSize, x: LoopElement, root: AffineRoot | None) -> bool:
    """Membership of x in g_root (root None means the zero-mode Cartan plus centrals)."""
    for t, _ in x.items():
        if len(t) == 1:
            if root is not None:
                return False
            continue
        r = root_of_term(t)
        if root is None:
            if r is not None:
                return False
        elif root.is_real:
            if r != root:
                return False
        else:
            if r is None or r.is_real or r.s != root.s:
                return False
    if root is not None and not root.is_real:
        # imaginary root space lies in sl(m|n) (x) t^s: supertrace zero
        from .loop import supertrace
        return supertrace(size, x) == 0
    return True


def kappa_check(size: SuperSize, pairs) -> bool:
    return all(
        kappa(size, p.x_plus, q.x_minus) == (1 if p.index == q.index else 0) for p in pairs for q in pairs
    )
