"""Generator bindings: how abstract Yangian symbols act on a carrier.

A binding wraps a :class:`GeneratorAction` together with a description of the
carrier (one evaluation module, or the tensor square of two evaluation
modules through the coproduct) and a default family of test vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..evaluation import EvAction, GeneratorAction
from ..roots import dual_basis, inner, positive_roots
from ..superdata import SuperSize
from ..verma import ONE, HighestWeight, TensorModule, VermaModule, add_into, mono_depth


@dataclass
class GeneratorBinding:
    action: GeneratorAction
    carrier: str
    extra: dict = field(default_factory=dict)

    @property
    def size(self) -> SuperSize:
        return self.action.size

    def parity(self, kind: str, i: int) -> int:
        return self.action.parity(kind, i)

    def apply(self, kind: str, i: int, r: int, v: dict) -> dict:
        return self.action.apply_gen(kind, i, r, v)

    def _cached(self) -> list:
        out = [self.action] + [getattr(self.action, k) for k in ("ev1", "ev2") if hasattr(self.action, k)]
        if "module" in self.extra:
            out.append(self.extra["module"])
        out.extend(self.extra.get("modules", ()))
        return out

    def trim_caches(self, limit: int) -> bool:
        """Drop all memoized actions once they hold more than ``limit`` entries."""
        holders = self._cached()
        if sum(h.cache_size() for h in holders) <= limit:
            return False
        for h in holders:
            h.clear_cache()
        return True


def ev_binding(size: SuperSize, hw: HighestWeight, e1, e2, alpha, mutations: Sequence[str] = ()) -> GeneratorBinding:
    module = VermaModule(size, hw)
    action = EvAction(module, e1, e2, alpha, mutations)
    desc = f"ev on M({','.join(map(str, hw.weights))}; level {hw.level})"
    return GeneratorBinding(action, desc, {"module": module})


class CoproductAction(GeneratorAction):
    """Delta applied to generators, acting on M1 (x) M2 where each Mi is an ev-module.

    Degree zero is primitive; Delta(h_{i,1}) is the explicit formula with the
    root sum over kappa-dual pairs; Delta(x+-_{i,1}) and all higher generators
    follow the recursion of the base class.
    """

    def __init__(self, tensor: TensorModule, ev1: EvAction, ev2: EvAction, rotation=None):
        super().__init__(tensor.size, ev1.e1, ev1.e2)
        self.tensor = tensor
        self.ev1, self.ev2 = ev1, ev2
        self.rotation = rotation
        self._weighted: dict = {}

    def _weighted_pairs(self, i: int, cutoff: int) -> list:
        """(x_minus, x_plus, (root, alpha_i), parity) for dual pairs up to ``cutoff``, zero weights dropped."""
        key = (i, cutoff)
        if key not in self._weighted:
            rows = []
            for pair in self._pairs(cutoff):
                w = inner(self.size, pair.root, i)
                if w:
                    rows.append((pair.x_minus, pair.x_plus, w, pair.root.parity(self.size)))
            self._weighted[key] = rows
        return self._weighted[key]

    def _pairs(self, cutoff: int):
        out = []
        for root in positive_roots(self.size, cutoff):
            if not root.is_real:
                # kept for basis-rotation checks; (s delta, alpha_i) = 0 kills them anyway
                out.extend(dual_basis(self.size, root, self.rotation))
            else:
                out.extend(dual_basis(self.size, root))
        return out

    def _explicit(self, kind, i, r, key):
        T = self.tensor
        v = {key: ONE}
        if kind in ("x+", "x-", "h") and r == 0:
            p = self.parity(kind, i)
            out = T.apply_left(self.ev1.gen(kind, i, 0), v)
            return add_into(out, T.apply_right(self.ev2.gen(kind, i, 0), p, v))
        if kind == "h" and r == 1:
            out = T.apply_left(self.ev1.gen("h", i, 1), v)
            add_into(out, T.apply_right(self.ev2.gen("h", i, 1), 0, v))
            add_into(out, T.apply_pair(self.ev1.gen("h", i, 0), self.ev2.gen("h", i, 0), 0, v), self.hbar)
            m1, m2 = key
            M1, M2 = T.left, T.right
            for xm, xp, w, par in self._weighted_pairs(i, mono_depth(m2)):
                op1 = lambda u, x=xm: M1.act(x, u)
                op2 = lambda u, x=xp: M2.act(x, u)
                add_into(out, T.apply_pair(op1, op2, par, v), -self.hbar * w)
            return out
        return None


def coproduct_binding(size: SuperSize, hw1: HighestWeight, hw2: HighestWeight, e1, e2, alpha1, alpha2=None,
                      rotation=None, mutations: Sequence[str] = ()) -> GeneratorBinding:
    alpha2 = alpha1 if alpha2 is None else alpha2
    m1, m2 = VermaModule(size, hw1), VermaModule(size, hw2)
    ev1 = EvAction(m1, e1, e2, alpha1, mutations)
    ev2 = EvAction(m2, e1, e2, alpha2, mutations)
    tensor = TensorModule(m1, m2)
    action = CoproductAction(tensor, ev1, ev2, rotation)
    desc = "Delta on ev M1 (x) ev M2" + (" (rotated imaginary basis)" if rotation is not None else "")
    return GeneratorBinding(action, desc, {"tensor": tensor, "modules": (m1, m2)})
