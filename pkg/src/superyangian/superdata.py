"""Discrete data of gl(m|n), sl(m|n) and the affine node set.

Indices of the defining representation run over ``1..m+n``; Dynkin nodes of
the affine diagram run over ``0..m+n-1`` with node ``0`` the affine node.
Node ``i >= 1`` carries the simple root ``eps_i - eps_{i+1}``; node ``0``
carries ``eps_{m+n} - eps_1 + delta``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True)
class SuperSize:
    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise TypeError("m and n must be integers")
        if self.m < 2 or self.n < 2:
            raise ValueError(f"need m, n >= 2, got ({self.m}, {self.n})")
        if self.m == self.n:
            raise ValueError(f"need m != n, got m = n = {self.m}")

    @property
    def N(self) -> int:
        return self.m + self.n

    @property
    def nodes(self) -> range:
        return range(self.N)

    @property
    def odd_nodes(self) -> tuple:
        return (0, self.m)

    def p(self, a: int) -> int:
        """Parity of the basis vector ``a`` of C^{m|n}; ``p(0)`` wraps to ``p(m+n)``."""
        if a == 0:
            a = self.N
        if not 1 <= a <= self.N:
            raise IndexError(f"index {a} out of range 1..{self.N}")
        return 0 if a <= self.m else 1

    def node_parity(self, i: int) -> int:
        self.check_node(i)
        return 1 if i in (0, self.m) else 0

    def check_node(self, i: int) -> None:
        if not (isinstance(i, int) and 0 <= i < self.N):
            raise IndexError(f"node {i} out of range 0..{self.N - 1}")

    def sign(self, a: int) -> int:
        return -1 if self.p(a) else 1

    @cached_property
    def affine_cartan(self) -> tuple:
        return tuple(tuple(_cartan_entry(self, i, j) for j in self.nodes) for i in self.nodes)

    @cached_property
    def b_matrix(self) -> tuple:
        return tuple(tuple(_b_entry(self, i, j) for j in self.nodes) for i in self.nodes)


def _cartan_entry(size: SuperSize, i: int, j: int) -> int:
    N, p = size.N, size.p
    if {i, j} == {0, N - 1} and i != j:
        return 1
    if i == j:
        return (-1) ** p(i) + (-1) ** p(i + 1)
    if j == i + 1:
        return -((-1) ** p(i + 1))
    if j == i - 1:
        return -((-1) ** p(i))
    return 0


def _b_entry(size: SuperSize, i: int, j: int, printed: bool = False) -> int:
    # The printed case labels i=j+1 / i=j-1 are exchanged relative to what the
    # evaluation map satisfies; the used form is antisymmetric on adjacent pairs.
    N, p = size.N, size.p
    if (i, j) == (0, N - 1):
        return -1
    if (i, j) == (N - 1, 0):
        return 1
    up, down = (i == j + 1, i == j - 1) if printed else (i == j - 1, i == j + 1)
    if up:
        return -((-1) ** p(i + 1))
    if down:
        return (-1) ** p(i)
    return 0


def cartan_affine(size: SuperSize, i: int, j: int) -> int:
    size.check_node(i)
    size.check_node(j)
    return size.affine_cartan[i][j]


def cartan_finite(size: SuperSize, i: int, j: int) -> int:
    for k in (i, j):
        if not (isinstance(k, int) and 1 <= k <= size.N - 1):
            raise IndexError(f"finite node {k} out of range 1..{size.N - 1}")
    return size.affine_cartan[i][j]


def b_coeff(size: SuperSize, i: int, j: int) -> int:
    size.check_node(i)
    size.check_node(j)
    return size.b_matrix[i][j]


def b_coeff_printed(size: SuperSize, i: int, j: int) -> int:
    """The b-matrix exactly as its closed form is usually printed (not antisymmetric)."""
    size.check_node(i)
    size.check_node(j)
    return _b_entry(size, i, j, printed=True)


def chevalley(size: SuperSize, presentation: str, kind: str, i: int):
    """Image of a Chevalley generator in the loop algebra.

    ``kind`` is one of ``"h"``, ``"x+"``, ``"x-"``; ``presentation`` is
    ``"finite"`` (nodes 1..m+n-1, mode 0 only) or ``"affine"``.
    """
    from .loop import LoopElement, central_c, unit

    if presentation not in ("finite", "affine"):
        raise ValueError(f"unknown presentation {presentation!r}")
    if presentation == "finite" and i == 0:
        raise IndexError("node 0 belongs to the affine presentation only")
    size.check_node(i)
    N, sgn = size.N, size.sign
    if kind == "h":
        if i == 0:
            return -unit(1, 1) - unit(N, N) + central_c()
        return sgn(i) * unit(i, i) - sgn(i + 1) * unit(i + 1, i + 1)
    if kind == "x+":
        return unit(N, 1, 1) if i == 0 else unit(i, i + 1)
    if kind == "x-":
        return -unit(1, N, -1) if i == 0 else sgn(i) * unit(i + 1, i)
    raise ValueError(f"unknown generator kind {kind!r}")


def format_matrix(rows) -> str:
    width = max(len(str(x)) for row in rows for x in row)
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in rows)
