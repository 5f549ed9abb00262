"""Extensional verification of relations on modules.

A relation is a zero-form; it is checked by applying it to every vector of a
finite test family and requiring an exactly zero result.  Passing means
"verified on these vectors", nothing more.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..coeff import ALPHA, E1, E2, LEVEL, ParamPoly, format_rat, sample_assignment
from ..loop import LoopElement, bracket, supertrace
from ..roots import AffineRoot, dual_basis
from ..superdata import SuperSize
from ..verma import HighestWeight, TensorModule, add_into, format_mono, pbw_monomials
from .bindings import GeneratorBinding, coproduct_binding, ev_binding
from .catalog import RelationSpec, catalog, select
from .dsl import (
    Add, AdPow, Anti, Bracket, Coef, Gen, Mul, Neg, Num, Param, Pow, Sub, Sym,
    eval_index, print_relation, sym_instances,
)


class UnboundSymbol(KeyError):
    pass


# --- evaluation of relation trees ------------------------------------------------

def _is_scalar(node) -> bool:
    if isinstance(node, (Num, Param, Coef)):
        return True
    if isinstance(node, (Add, Sub, Mul)):
        return _is_scalar(node.left) and _is_scalar(node.right)
    if isinstance(node, Neg):
        return _is_scalar(node.arg)
    if isinstance(node, Pow):
        return _is_scalar(node.base)
    return False


def scalar_value(node, env, size, scalars):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Param):
        return scalars[node.name]
    if isinstance(node, Coef):
        return Fraction(eval_index(node, env, size))
    if isinstance(node, Add):
        return scalar_value(node.left, env, size, scalars) + scalar_value(node.right, env, size, scalars)
    if isinstance(node, Sub):
        return scalar_value(node.left, env, size, scalars) - scalar_value(node.right, env, size, scalars)
    if isinstance(node, Mul):
        return scalar_value(node.left, env, size, scalars) * scalar_value(node.right, env, size, scalars)
    if isinstance(node, Neg):
        return -scalar_value(node.arg, env, size, scalars)
    if isinstance(node, Pow):
        return scalar_value(node.base, env, size, scalars) ** node.exp
    raise TypeError(f"not a scalar: {node!r}")


def _gen_args(node: Gen, env, size):
    i = eval_index(node.i, env, size) % size.N
    r = 0 if node.r is None else eval_index(node.r, env, size)
    if r < 0:
        raise ValueError(f"negative mode in {print_relation(node)}")
    return i, r


def parity_of(node, env, binding: GeneratorBinding) -> int:
    size = binding.size
    if _is_scalar(node):
        return 0
    if isinstance(node, Gen):
        i, _ = _gen_args(node, env, size)
        return binding.parity(node.kind, i)
    if isinstance(node, (Bracket, Anti, Mul)):
        return (parity_of(node.left, env, binding) + parity_of(node.right, env, binding)) % 2
    if isinstance(node, (Add, Sub)):
        sides = [x for x in (node.left, node.right) if not _is_scalar(x)]
        ps = {parity_of(x, env, binding) for x in sides}
        if len(ps) > 1:
            raise ValueError(f"inhomogeneous sum {print_relation(node)}")
        return ps.pop()
    if isinstance(node, Neg):
        return parity_of(node.arg, env, binding)
    if isinstance(node, Pow):
        return parity_of(node.base, env, binding) * node.exp % 2
    if isinstance(node, AdPow):
        k = eval_index(node.k, env, size)
        return (k * parity_of(node.x, env, binding) + parity_of(node.y, env, binding)) % 2
    if isinstance(node, Sym):
        return parity_of(node.body, env, binding)
    raise TypeError(f"unknown node {node!r}")


def evaluate(node, env: dict, binding: GeneratorBinding, scalars: dict, v: dict) -> dict:
    """Apply the operator denoted by ``node`` (indices bound by ``env``) to ``v``."""
    size = binding.size
    if not v:
        return {}
    if _is_scalar(node):
        c = scalar_value(node, env, size, scalars)
        return {k: x * c for k, x in v.items() if x * c} if c else {}
    if isinstance(node, Gen):
        i, r = _gen_args(node, env, size)
        try:
            return binding.apply(node.kind, i, r, v)
        except (NotImplementedError, ValueError) as exc:
            raise UnboundSymbol(f"{print_relation(node)}: {exc}") from exc
    if isinstance(node, (Add, Sub)):
        out = dict(evaluate(node.left, env, binding, scalars, v))
        return add_into(out, evaluate(node.right, env, binding, scalars, v), 1 if isinstance(node, Add) else -1)
    if isinstance(node, Neg):
        return {k: -x for k, x in evaluate(node.arg, env, binding, scalars, v).items()}
    if isinstance(node, Mul):
        return evaluate(node.left, env, binding, scalars, evaluate(node.right, env, binding, scalars, v))
    if isinstance(node, Pow):
        for _ in range(node.exp):
            v = evaluate(node.base, env, binding, scalars, v)
        return v
    if isinstance(node, (Bracket, Anti)):
        pl, pr = parity_of(node.left, env, binding), parity_of(node.right, env, binding)
        sign = -1 if pl * pr else 1
        if isinstance(node, Bracket):
            sign = -sign
        out = dict(evaluate(node.left, env, binding, scalars, evaluate(node.right, env, binding, scalars, v)))
        return add_into(out, evaluate(node.right, env, binding, scalars, evaluate(node.left, env, binding, scalars, v)), sign)
    if isinstance(node, AdPow):
        k = eval_index(node.k, env, size)
        expr = node.y
        for _ in range(k):
            expr = Bracket(node.x, expr)
        return evaluate(expr, env, binding, scalars, v)
    if isinstance(node, Sym):
        out: dict = {}
        for sub in sym_instances(node, env):
            add_into(out, evaluate(node.body, sub, binding, scalars, v))
        return out
    raise TypeError(f"unknown node {node!r}")


# --- reports ---------------------------------------------------------------------

def format_coeff(c) -> str:
    if isinstance(c, ParamPoly):
        return str(c)
    return format_rat(c)


def format_key(key) -> str:
    if isinstance(key, tuple) and len(key) == 2 and all(isinstance(k, tuple) for k in key) and (
        not key[0] or isinstance(key[0][0], tuple)) and (not key[1] or isinstance(key[1][0], tuple)):
        return f"{format_mono(key[0])} (x) {format_mono(key[1])}"
    return format_mono(key)


@dataclass
class CheckReport:
    rid: str
    family: str
    instance: dict
    carrier: str
    status: str
    vectors: int
    sample: int = 0
    witness: str | None = None
    residual: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        d = asdict(self)
        d["instance"] = {k: self.instance[k] for k in sorted(self.instance)}
        return d


def check_on_module(rel, inst: dict, binding: GeneratorBinding, vectors: Sequence[dict], scalars: dict,
                    reduce: Callable | None = None, rid: str | None = None, family: str | None = None,
                    sample: int = 0) -> CheckReport:
    """Evaluate the zero-form ``rel`` at index instance ``inst`` on each vector."""
    ast = rel.ast if isinstance(rel, RelationSpec) else rel
    rid = rid or (rel.rid if isinstance(rel, RelationSpec) else print_relation(ast))
    family = family or (rel.family if isinstance(rel, RelationSpec) else rid)
    for v in vectors:
        res = evaluate(ast, inst, binding, scalars, v)
        if reduce is not None:
            res = {k: c for k, c in ((k, reduce(c)) for k, c in res.items()) if c}
        if res:
            (wkey,) = v.keys() if len(v) == 1 else (next(iter(v)),)
            residual = {format_key(k): format_coeff(c) for k, c in sorted(res.items(), key=lambda kc: format_key(kc[0]))}
            return CheckReport(rid, family, dict(inst), binding.carrier, "fail", len(vectors), sample,
                               format_key(wkey), residual)
    return CheckReport(rid, family, dict(inst), binding.carrier, "pass", len(vectors), sample)


# --- test vectors -----------------------------------------------------------------

def test_vectors(size: SuperSize, depth: int, zero_len: int, max_count: int | None = None, seed: int = 0) -> list:
    """PBW basis vectors of depth <= D with <= L zero modes.

    When the basis is larger than ``max_count`` a deterministic subsample is
    taken: every monomial with at most one factor is kept, the rest is drawn
    uniformly with a seeded generator.
    """
    monos = pbw_monomials(size, depth, zero_len)
    if max_count is None or len(monos) <= max_count:
        chosen = monos
    else:
        base = [m for m in monos if len(m) <= 1]
        rest = [m for m in monos if len(m) > 1]
        rng = random.Random(f"vectors:{seed}:{size.m}:{size.n}:{depth}:{zero_len}")
        k = max(0, max_count - len(base))
        picked = sorted(rng.sample(range(len(rest)), min(k, len(rest))))
        chosen = base + [rest[p] for p in picked]
    return [{m: Fraction(1)} for m in chosen]


def tensor_vectors(size: SuperSize, depth: int, zero_len: int, max_count: int | None = None, seed: int = 0) -> list:
    """Pairs of PBW basis vectors; a stratified seeded subsample when over ``max_count``.

    Strata: the vacuum pair, pairs with one vacuum side (a quarter of the
    budget) and pairs with both sides non-trivial (the rest).
    """
    monos = pbw_monomials(size, depth, zero_len)
    pairs = [(a, b) for a in monos for b in monos]
    if max_count is not None and len(pairs) > max_count:
        rng = random.Random(f"tensor:{seed}:{size.m}:{size.n}:{depth}:{zero_len}")
        one = [p for p in pairs if bool(p[0]) != bool(p[1])]
        two = [p for p in pairs if p[0] and p[1]]
        k1 = min(len(one), (max_count - 1) // 4)
        k2 = min(len(two), max_count - 1 - k1)
        k1 = min(len(one), max_count - 1 - k2)
        pick = lambda pool, k: [pool[i] for i in sorted(rng.sample(range(len(pool)), k))]
        pairs = [((), ())] + pick(one, k1) + pick(two, k2)
    return [{p: Fraction(1)} for p in pairs]


def sample_weights(seed, size: SuperSize, tag: str = "hw") -> list:
    rng = random.Random(f"{tag}:{seed}:{size.m}:{size.n}")
    out = []
    for _ in range(size.N):
        out.append(Fraction(rng.randint(-40, 40), rng.randint(1, 40)))
    return out


# --- Kac duality identity --------------------------------------------------------

def kac_identity_check(size: SuperSize, alpha: AffineRoot, beta: AffineRoot, z: LoopElement,
                       tensor: TensorModule, vectors: Sequence[dict]) -> CheckReport:
    """sum_k [x^k_beta, z] (x) x^k_{-beta} = sum_k x^k_alpha (x) [z, x^k_{-alpha}] on tensor vectors.

    ``z`` must lie in the root space of alpha - beta (including the Cartan
    part when alpha = beta).
    """
    diff = _root_difference(alpha, beta)
    if not _in_space(size, z, diff):
        raise ValueError(f"z = {z} is not in the root space of {alpha} - {beta}")
    lhs_terms = [(bracket(size, p.x_plus, z), p.x_minus) for p in dual_basis(size, beta)]
    rhs_terms = [(p.x_plus, bracket(size, z, p.x_minus)) for p in dual_basis(size, alpha)]
    L, R = tensor.left, tensor.right
    rid = "kac"
    inst = {"alpha": str(alpha), "beta": str(beta), "z": str(z)}
    for v in vectors:
        out: dict = {}
        for terms, sign in ((lhs_terms, 1), (rhs_terms, -1)):
            for x, y in terms:
                for part_par, ypart in y.homogeneous_parts(size).items():
                    add_into(out, tensor.apply_pair(lambda u, x=x: L.act(x, u), lambda u, y=ypart: R.act(y, u), part_par, v), sign)
        if out:
            (wkey,) = v.keys()
            residual = {format_key(k): format_coeff(c) for k, c in sorted(out.items(), key=lambda kc: format_key(kc[0]))}
            return CheckReport(rid, "kac", inst, "g (x) g on M1 (x) M2", "fail", len(vectors), 0, format_key(wkey), residual)
    return CheckReport(rid, "kac", inst, "g (x) g on M1 (x) M2", "pass", len(vectors))


def _root_weight(root: AffineRoot):
    w = {}
    if root.is_real:
        w = {root.a: 1, root.b: -1}
    return w, root.s


def _root_difference(alpha: AffineRoot, beta: AffineRoot):
    wa, sa = _root_weight(alpha)
    wb, sb = _root_weight(beta)
    w = dict(wa)
    for k, c in wb.items():
        w[k] = w.get(k, 0) - c
    return {k: c for k, c in w.items() if c}, sa - sb


def _in_space(size: SuperSize, z: LoopElement, diff) -> bool:
    """Whether every term of z has the weight and mode of ``diff``."""
    w, s = diff
    diag = {}
    for t, c in z.items():
        if len(t) == 1:
            if w or s:
                return False
            continue
        a, b, k = t
        tw = {} if a == b else {a: 1, b: -1}
        if tw != w or k != s:
            return False
        if a == b:
            diag[t] = c
    if s and diag:
        return supertrace(size, LoopElement(diag)) == 0
    return True


# --- suite ------------------------------------------------------------------------

MODES = ("ev", "yangian", "coproduct", "j")

DEFAULT_GROUPS = {
    "ev": ("minimalistic", "evaluation"),
    "yangian": ("yangian",),
    "coproduct": ("minimalistic",),
    "j": ("j",),
}


@dataclass
class SuiteConfig:
    m: int = 2
    n: int = 3
    seed: int = 1
    samples: int = 3
    symbolic: bool = False
    enforce_level: bool = True
    sign: str = "auto"
    depth: int = 2
    zero_mode_len: int = 2
    relations: tuple = ()
    mode: str = "ev"
    groups: tuple = ()
    max_vectors: int | None = 96
    level_shift: Fraction = Fraction(0)
    mutations: tuple = ()
    weights: tuple | None = None
    weights2: tuple | None = None
    # yangian-group checks only use vectors with at most this many PBW factors (None: all);
    # mode-3 generators on two-factor depth-2 vectors cost minutes per vector
    yangian_max_factors: int | None = 1

    def __post_init__(self):
        SuperSize(self.m, self.n)
        if self.depth < 0 or self.depth > 4:
            raise ValueError("depth must be in 0..4")
        if self.zero_mode_len < 0 or self.zero_mode_len > 3:
            raise ValueError("zero_mode_len must be in 0..3")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.sign not in ("theorem", "proof", "auto"):
            raise ValueError(f"unknown sign {self.sign!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.yangian_max_factors is not None and self.yangian_max_factors < 0:
            raise ValueError("yangian_max_factors must be >= 0")
        self.relations = tuple(self.relations)
        self.groups = tuple(self.groups)
        self.mutations = tuple(self.mutations)
        self.level_shift = Fraction(self.level_shift)

    @property
    def size(self) -> SuperSize:
        return SuperSize(self.m, self.n)

    def echo(self) -> dict:
        d = asdict(self)
        d["level_shift"] = format_rat(self.level_shift)
        for k in ("weights", "weights2"):
            if d[k] is not None:
                d[k] = [format_rat(x) for x in d[k]]
        d["relations"] = list(self.relations)
        d["groups"] = list(self.groups)
        d["mutations"] = list(self.mutations)
        return d


@dataclass
class SuiteReport:
    config: dict
    records: list = field(default_factory=list)
    resolved_sign: str | None = None
    sign_trials: dict = field(default_factory=dict)

    @property
    def summary(self) -> dict:
        npass = sum(1 for r in self.records if r.passed)
        return {"pass": npass, "fail": len(self.records) - npass, "total": len(self.records)}

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list:
        return [r for r in self.records if not r.passed]

    def to_json(self) -> dict:
        recs = sorted(self.records, key=lambda r: (r.sample, r.rid, sorted(r.instance.items())))
        return {
            "config": self.config,
            "records": [r.to_json() for r in recs],
            "resolved_sign": self.resolved_sign,
            "sign_trials": self.sign_trials,
            "summary": self.summary,
        }


def _binding_for(cfg: SuiteConfig, sample: int, sign: str):
    """Binding, scalars and residual reducer for one parameter sample."""
    size = cfg.size
    if cfg.symbolic:
        e1, e2, alpha = E1, E2, ALPHA
        level = LEVEL + cfg.level_shift
        num, den = E1 * (size.n - size.m if sign == "theorem" else size.m - size.n), E1 + E2

        def reduce(c):
            c = ParamPoly.coerce(c)
            if cfg.enforce_level and c:
                c = c.substitute("lvl", num, den)
            return c
        alpha2 = ALPHA * 2 - 1
    else:
        pa = sample_assignment(cfg.seed * 1000 + sample, size, cfg.enforce_level, sign if sign != "auto" else "theorem")
        e1, e2, alpha = pa.e1, pa.e2, pa.alpha
        level = pa.lvl + cfg.level_shift
        reduce = None
        alpha2 = sample_assignment(cfg.seed * 1000 + sample + 500, size, False).alpha
    weights = list(cfg.weights) if cfg.weights is not None else sample_weights(f"{cfg.seed}/{sample}", size)
    hw = HighestWeight([Fraction(w) for w in weights], level)
    scalars = {"e1": e1, "e2": e2, "hbar": e1 + e2}
    if cfg.mode == "coproduct":
        w2 = list(cfg.weights2) if cfg.weights2 is not None else sample_weights(f"{cfg.seed}/{sample}", size, "hw2")
        hw2 = HighestWeight([Fraction(w) for w in w2], level)
        b = coproduct_binding(size, hw, hw2, e1, e2, alpha, alpha2, mutations=cfg.mutations)
    else:
        b = ev_binding(size, hw, e1, e2, alpha, cfg.mutations)
    return b, scalars, reduce


def _vectors_for(cfg: SuiteConfig) -> list:
    if cfg.mode == "coproduct":
        return tensor_vectors(cfg.size, cfg.depth, cfg.zero_mode_len, cfg.max_vectors, cfg.seed)
    return test_vectors(cfg.size, cfg.depth, cfg.zero_mode_len, cfg.max_vectors, cfg.seed)


def _vectors_for_group(cfg: SuiteConfig, group: str, vectors: list) -> list:
    if group != "yangian" or cfg.yangian_max_factors is None or cfg.mode == "coproduct":
        return vectors
    k = cfg.yangian_max_factors
    return [v for v in vectors if all(len(m) <= k for m in v)]


def _specs_for(cfg: SuiteConfig) -> list:
    groups = cfg.groups or DEFAULT_GROUPS[cfg.mode]
    return select(catalog(groups), cfg.relations)


# memo entries kept per binding before the caches are dropped; bounds memory on deep runs
CACHE_LIMIT = 400_000


def _run_sign(cfg: SuiteConfig, sign: str, specs, vectors, fail_fast: bool = False) -> list:
    records = []
    samples = 1 if cfg.symbolic else cfg.samples
    for sample in range(samples):
        binding, scalars, reduce = _binding_for(cfg, sample, sign)
        for spec in specs:
            vecs = _vectors_for_group(cfg, spec.group, vectors)
            for inst in spec.instances(cfg.size):
                try:
                    rep = check_on_module(spec, inst, binding, vecs, scalars, reduce, sample=sample)
                except Exception as exc:  # a broken check is a failed check, never a crash
                    rep = CheckReport(spec.rid, spec.family, dict(inst), binding.carrier, "fail", len(vecs),
                                      sample, None, {"error": f"{type(exc).__name__}: {exc}"})
                records.append(rep)
                if fail_fast and not rep.passed:
                    return records
                binding.trim_caches(CACHE_LIMIT)
    return records


def run_suite(cfg: SuiteConfig, specs: Sequence[RelationSpec] | None = None, vectors=None) -> SuiteReport:
    specs = _specs_for(cfg) if specs is None else list(specs)
    vectors = _vectors_for(cfg) if vectors is None else vectors
    report = SuiteReport(cfg.echo())
    report.config["vector_count"] = len(vectors)
    if any(spec.group == "yangian" for spec in specs):
        report.config["yangian_vector_count"] = len(_vectors_for_group(cfg, "yangian", vectors))
    if not specs:
        return report
    if cfg.sign != "auto" or not cfg.enforce_level:
        sign = cfg.sign if cfg.sign != "auto" else "theorem"
        report.records = _run_sign(cfg, sign, specs, vectors)
        report.resolved_sign = sign if cfg.enforce_level else None
        return report
    trials = {}
    results = {}
    for sign in ("theorem", "proof"):
        recs = _run_sign(cfg, sign, specs, vectors, fail_fast=True)
        results[sign] = recs
        bad = [r for r in recs if not r.passed]
        trials[sign] = {"checked": len(recs), "refuted_by": None if not bad else f"{bad[0].rid} {_inst_text(bad[0].instance)}"}
    passing = [s for s in ("theorem", "proof") if trials[s]["refuted_by"] is None]
    report.sign_trials = trials
    report.resolved_sign = passing[0] if len(passing) == 1 else ("ambiguous" if passing else "none")
    chosen = passing[0] if passing else "theorem"
    report.records = results[chosen]
    return report


def _inst_text(inst: dict) -> str:
    return "(" + ", ".join(f"{k}={inst[k]}" for k in sorted(inst)) + ")"


def kac_samples(size: SuperSize, count: int = 20, seed: int = 0, max_mode: int = 2) -> list:
    """Deterministic (alpha, beta, z) triples with z spanning the root space of alpha - beta.

    Pairs whose difference is not a root (nor zero) are skipped since the
    identity is then trivially 0 = 0.
    """
    from ..loop import central_c, combine, unit
    from ..roots import positive_roots

    rng = random.Random(f"kac:{seed}:{size.m}:{size.n}")
    roots = positive_roots(size, max_mode)
    out = []
    while len(out) < count:
        alpha, beta = rng.choice(roots), rng.choice(roots)
        w, s = _root_difference(alpha, beta)
        if sorted(w.values()) == [-1, 1]:
            (a, _), (b, _) = sorted(w.items(), key=lambda kv: -kv[1])
            z = unit(a, b, s, Fraction(rng.randint(1, 5), rng.randint(1, 5)))
        elif not w:
            coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(size.N)]
            z = combine(((a, a, s), coeffs[a - 1]) for a in range(1, size.N + 1))
            if s:
                tr = supertrace(size, z)
                z = z - unit(1, 1, s, tr)  # E_11 has supertrace 1
            else:
                z = z + central_c(Fraction(rng.randint(-3, 3)))
            if z.is_zero():
                continue
        else:
            continue
        out.append((alpha, beta, z))
    return out


def kac_vectors(size: SuperSize, left_depth: int = 2, right_depth: int = 1) -> list:
    """Tensor vectors u (x) w with u, w at most one PBW factor.

    The left factor must reach the mode of the positive root vectors that act
    on it, otherwise both sides vanish trivially.
    """
    left = [m for m in pbw_monomials(size, left_depth, 1) if len(m) <= 1]
    right = [m for m in pbw_monomials(size, right_depth, 1) if len(m) <= 1]
    return [{(a, b): Fraction(1)} for a in left for b in right]
