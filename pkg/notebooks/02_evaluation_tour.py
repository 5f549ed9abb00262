"""A short tour of the evaluation images on a Verma module."""
from fractions import Fraction

from superyangian.coeff import level_value
from superyangian.evaluation import apply, ev_gen, omega_scale, omega_transform
from superyangian.superdata import SuperSize
from superyangian.verma import HighestWeight, VermaModule, pbw_monomials, scale_vec

S = SuperSize(2, 3)
e1, e2, alpha = Fraction(3, 7), Fraction(-1, 5), Fraction(2, 9)
lam = [Fraction(3, 2), Fraction(-1, 3), Fraction(5), Fraction(2, 7), Fraction(-4)]
M = VermaModule(S, HighestWeight(lam, level_value(2, 3, e1, e2)))
v = M.highest_weight_vector()

# h_{i,1} acts on the highest weight vector by a scalar
for i in S.nodes:
    print(f"h_{{{i},1}} v =", apply(M, ev_gen(S, "h", i, 1, e1, e2, alpha), v))

# x-_{1,1} creates a combination of depth-one vectors
for mono, c in sorted(apply(M, ev_gen(S, "x-", 1, 1, e1, e2, alpha), v).items(), key=str):
    print("  x-_{1,1} v:", mono, c)

# the anti-automorphism omega swaps x+ and x- up to the sign (-1)^{p(i)}
vectors = [{m: Fraction(1)} for m in pbw_monomials(S, 1, 1)]
for i in S.nodes:
    xp, xm = ev_gen(S, "x+", i, 1, e1, e2, alpha), ev_gen(S, "x-", i, 1, e1, e2, alpha)
    ok = all(apply(M, omega_transform(xp), u) == scale_vec(apply(M, xm, u), omega_scale(S, i)) for u in vectors)
    print(f"node {i}: omega x+ = {omega_scale(S, i):+d} x-  ({ok})")
