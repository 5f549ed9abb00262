"""Which sign of the level constraint makes the evaluation map work?

Run both candidate signs on a small vector set and print the first relation
instance that refutes each one.
"""
from superyangian.relations.engine import SuiteConfig, run_suite

cfg = SuiteConfig(m=2, n=3, samples=1, depth=1, zero_mode_len=1, groups=("minimalistic",))
rep = run_suite(cfg)
for sign, trial in rep.sign_trials.items():
    print(f"{sign:8s} checked {trial['checked']:4d}  refuted by {trial['refuted_by']}")
print("resolved:", rep.resolved_sign)

# without the constraint the failures sit exactly at the affine node
free = run_suite(SuiteConfig(m=2, n=3, samples=1, depth=1, zero_mode_len=1, enforce_level=False,
                             groups=("minimalistic",), relations=("2.5", "2.6")))
for r in free.failures():
    print("unconstrained level:", r.rid, r.instance, "witness", r.witness)
