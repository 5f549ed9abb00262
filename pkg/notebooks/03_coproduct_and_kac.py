"""Coproduct on a tensor product of evaluation modules, and the Kac duality identity."""
from fractions import Fraction

from superyangian.loop import unit
from superyangian.relations.engine import (
    SuiteConfig, kac_identity_check, kac_vectors, run_suite, sample_weights,
)
from superyangian.roots import AffineRoot
from superyangian.superdata import SuperSize
from superyangian.verma import HighestWeight, TensorModule, VermaModule

S = SuperSize(2, 3)

# a quick coproduct run: few vectors, degree-one relations only
cfg = SuiteConfig(m=2, n=3, samples=1, sign="theorem", mode="coproduct", depth=1, zero_mode_len=0,
                  max_vectors=20, relations=("2.3a", "2.5"))
rep = run_suite(cfg)
print("coproduct:", rep.summary)

# Kac identity: z has to sit in the root space of alpha - beta
tensor = TensorModule(*(VermaModule(S, HighestWeight(sample_weights(0, S, t), Fraction(0))) for t in ("hw", "hw2")))
vectors = kac_vectors(S)
alpha, beta = AffineRoot.real(1, 3), AffineRoot.real(1, 2)
print("alpha=a1+a2, beta=a1, z=E23:", kac_identity_check(S, alpha, beta, unit(2, 3), tensor, vectors).status)
try:
    kac_identity_check(S, beta, alpha, unit(2, 3), tensor, vectors)
except ValueError as exc:
    print("swapped roots rejected:", exc)
