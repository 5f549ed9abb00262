"""Defining relations of the affine Lie superalgebra checked on Chevalley images."""
from __future__ import annotations

from dataclasses import dataclass

from .loop import LoopElement, ad_power, bracket
from .superdata import SuperSize, cartan_affine, chevalley


@dataclass
class LieCheck:
    name: str
    nodes: tuple
    residual: LoopElement

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


def lie_relations(size: SuperSize) -> list:
    """All Chevalley-Serre relations (with the odd-node extras) as residuals."""
    X = {k: [chevalley(size, "affine", k, i) for i in size.nodes] for k in ("h", "x+", "x-")}
    N, m = size.N, size.m
    br = lambda x, y: bracket(size, x, y)
    out = []
    for i in size.nodes:
        for j in size.nodes:
            a = cartan_affine(size, i, j)
            out.append(LieCheck("[h,h]", (i, j), br(X["h"][i], X["h"][j])))
            for s, k in ((1, "x+"), (-1, "x-")):
                out.append(LieCheck(f"[h,{k}]", (i, j), br(X["h"][i], X[k][j]) - X[k][j] * (s * a)))
            cross = br(X["x+"][i], X["x-"][j])
            out.append(LieCheck("[x+,x-]", (i, j), cross - X["h"][i] if i == j else cross))
            if i != j:
                for k in ("x+", "x-"):
                    out.append(LieCheck(f"ad({k})^(1+|a|)", (i, j), ad_power(size, X[k][i], 1 + abs(a), X[k][j])))
    for k in ("x+", "x-"):
        x = X[k]
        for i in size.odd_nodes:
            out.append(LieCheck(f"[{k},{k}] odd", (i,), br(x[i], x[i])))
        out.append(LieCheck(f"quartic {k} at m", (m - 1, m, m + 1),
                            br(br(x[(m - 1) % N], x[m]), br(x[(m + 1) % N], x[m]))))
        out.append(LieCheck(f"quartic {k} at 0", (N - 1, 0, 1), br(br(x[N - 1], x[0]), br(x[1], x[0]))))
    return out
