"""Acceptance suite: one line per criterion, exact arithmetic throughout."""
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from superyangian.coeff import level_value, sample_assignment
from superyangian.evaluation import (
    ModeSeries, OperatorExpr, OperatorWord, apply, ev_gen, omega_scale, omega_transform,
)
from superyangian.lie import lie_relations
from superyangian.loop import C, Z, LoopElement, bracket, kappa, term_parity, unit
from superyangian.relations.bindings import coproduct_binding
from superyangian.relations.engine import (
    SuiteConfig, kac_identity_check, kac_samples, kac_vectors, run_suite, sample_weights, tensor_vectors,
    test_vectors as make_vectors,
)
from superyangian.roots import dual_basis, in_root_space, positive_roots, reflect, tau
from superyangian.superdata import SuperSize, b_coeff, cartan_affine
from superyangian.verma import HighestWeight, TensorModule, VermaModule, pbw_monomials, scale_vec

S23, S32 = SuperSize(2, 3), SuperSize(3, 2)


def record(k: int, ok: bool, detail: str) -> None:
    line = f"#{k} {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _summary(rep) -> str:
    s = rep.summary
    return f"pass {s['pass']} fail {s['fail']} total {s['total']}"


# --- 1 ------------------------------------------------------------------------

def _eps(size, node):
    """simple root of a node as a dict {index: coefficient}"""
    a, b = (node, node + 1) if node else (size.N, 1)
    return {a: 1, b: -1}


def _form(size, x, y):
    return sum(c * y.get(a, 0) * size.sign(a) for a, c in x.items())


def _b_closed(size, i, j):
    N, p = size.N, size.p
    if (i, j) == (0, N - 1):
        return -1
    if (i, j) == (N - 1, 0):
        return 1
    if i == j - 1:
        return -((-1) ** p(i + 1))
    if i == j + 1:
        return (-1) ** p(i)
    return 0


def test_1_cartan_conformance():
    t0 = time.perf_counter()
    mismatches, checked = [], 0
    for size in (S23, S32):
        N = size.N
        for i in size.nodes:
            for j in size.nodes:
                checked += 1
                if cartan_affine(size, i, j) != _form(size, _eps(size, i), _eps(size, j)):
                    mismatches.append(("a", size.m, size.n, i, j))
                if b_coeff(size, i, j) != _b_closed(size, i, j):
                    mismatches.append(("b", size.m, size.n, i, j))
        corners = (cartan_affine(size, 0, N - 1), cartan_affine(size, N - 1, 0), b_coeff(size, 0, N - 1), b_coeff(size, N - 1, 0))
        if corners != (1, 1, -1, 1):
            mismatches.append(("corners", size.m, size.n, corners))
    dt = time.perf_counter() - t0
    record(1, not mismatches and dt < 1,
           f"cartan/b closed forms, {checked} entries x 2 matrices, mismatches {len(mismatches)}, "
           f"b with i=j+1 / i=j-1 labels exchanged, {dt:.3f}s")


# --- 2 ------------------------------------------------------------------------

def test_2_lie_presentation():
    t0 = time.perf_counter()
    out = []
    for size in (S23, S32):
        checks = lie_relations(size)
        out.append((size, len(checks), [c.name for c in checks if not c.passed]))
    dt = time.perf_counter() - t0
    ok = all(not bad for _, _, bad in out) and dt < 10
    record(2, ok, "; ".join(f"({s.m}|{s.n}) {n} relations, {len(bad)} failing" for s, n, bad in out) + f", {dt:.1f}s")


# --- 3 ------------------------------------------------------------------------

def _rand_elem(rng, size, parity, central=True):
    terms = {}
    while not terms:
        for _ in range(rng.randint(1, 3)):
            a, b = rng.randint(1, size.N), rng.randint(1, size.N)
            if term_parity(size, (a, b, 0)) == parity:
                terms[(a, b, rng.randint(-2, 2))] = Fraction(rng.randint(-6, 6) or 1, rng.randint(1, 4))
        if central and parity == 0 and rng.random() < 0.5:
            terms[rng.choice([C, Z])] = Fraction(rng.randint(1, 5))
    return LoopElement(terms)


def test_3_bracket_and_module_oracles():
    t0 = time.perf_counter()
    S, rng = S23, random.Random("acceptance-3")
    n = 200
    anti = jac = rep = 0
    central_hits = set()
    for _ in range(n):
        px, py = rng.randint(0, 1), rng.randint(0, 1)
        x, y = _rand_elem(rng, S, px), _rand_elem(rng, S, py)
        anti += bracket(S, x, y) == bracket(S, y, x) * (-((-1) ** (px * py)))
    for _ in range(n):
        ps = [rng.randint(0, 1) for _ in range(3)]
        x, y, z = (_rand_elem(rng, S, p) for p in ps)
        px, py, pz = ps
        total = (bracket(S, x, bracket(S, y, z)) * ((-1) ** (px * pz))
                 + bracket(S, y, bracket(S, z, x)) * ((-1) ** (py * px))
                 + bracket(S, z, bracket(S, x, y)) * ((-1) ** (pz * py)))
        jac += total.is_zero()
        for inner in (bracket(S, y, z), bracket(S, z, x), bracket(S, x, y)):
            central_hits |= {t for t, _ in inner.items() if len(t) == 1}
    M = VermaModule(S, HighestWeight(sample_weights(3, S), Fraction(7, 3)))
    vecs = pbw_monomials(S, 2, 1)
    for _ in range(n):
        px, py = rng.randint(0, 1), rng.randint(0, 1)
        x, y = _rand_elem(rng, S, px), _rand_elem(rng, S, py)
        v = {rng.choice(vecs): Fraction(1)}
        lhs = M.act(x, M.act(y, v))
        other = M.act(y, M.act(x, v))
        for k, c in other.items():
            lhs[k] = lhs.get(k, 0) - (-1) ** (px * py) * c
        lhs = {k: c for k, c in lhs.items() if c}
        rep += lhs == M.act(bracket(S, x, y), v)
    dt = time.perf_counter() - t0
    ok = anti == jac == rep == n and central_hits == {C, Z} and dt < 60
    record(3, ok, f"antisymmetry {anti}/{n}, Jacobi {jac}/{n} (central terms seen: "
                  f"{','.join(sorted(t[0] for t in central_hits))}), representation {rep}/{n}, {dt:.1f}s")


# --- 4 ------------------------------------------------------------------------

def test_4_evaluation_map():
    t0 = time.perf_counter()
    cfg = SuiteConfig(m=2, n=3, seed=1, samples=3, sign="auto", depth=2, zero_mode_len=2,
                      groups=("minimalistic", "evaluation"), max_vectors=96)
    rep = run_suite(cfg)
    dt = time.perf_counter() - t0
    nvec = rep.config["vector_count"]
    families = sorted({r.family for r in rep.records})
    ok = rep.ok and rep.resolved_sign == "theorem" and nvec >= 75 and len(families) == 13
    record(4, ok, f"ev suite {_summary(rep)}, {len(families)} families, 3 samples, {nvec} vectors from D=2 L=2, "
                  f"level sign {rep.resolved_sign} (other sign refuted by {rep.sign_trials['proof']['refuted_by']}), {dt:.0f}s")


# --- 5 ------------------------------------------------------------------------

def test_5_negative_controls():
    base = dict(m=2, n=3, seed=1, samples=1, sign="theorem", depth=2, zero_mode_len=2, max_vectors=96)
    shifted = run_suite(SuiteConfig(**base, groups=("minimalistic",), relations=("2.5",), level_shift=Fraction(1)))
    mutated = run_suite(SuiteConfig(**base, groups=("evaluation",), relations=("rel4",), mutations=("flip_h0_word",)))
    a = [r for r in shifted.failures() if r.family == "2.5" and 0 in r.instance.values()]
    b = [r for r in mutated.failures() if r.rid == "rel4" and r.instance == {"i": 0, "j": 0}]
    ok = bool(a) and bool(b) and all(r.witness and r.residual for r in a + b)
    wa = f"{a[0].rid} i={a[0].instance['i']} j={a[0].instance['j']} witness {a[0].witness}" if a else "none"
    wb = f"witness {b[0].witness}" if b else "none"
    record(5, ok, f"level c+1: {len(a)} affine-node 2.5 failures ({wa}); flipped rel4 word: "
                  f"{len(b)} failure at i=j=0 ({wb}), other rel4 failures {len(mutated.failures()) - len(b)}")


# --- 6 ------------------------------------------------------------------------

def test_6_higher_generators():
    t0 = time.perf_counter()
    cfg = SuiteConfig(m=2, n=3, seed=1, samples=1, sign="theorem", depth=2, zero_mode_len=1,
                      groups=("yangian",), max_vectors=96)
    rep = run_suite(cfg)
    dt = time.perf_counter() - t0
    fam = sorted({r.family for r in rep.records})
    nvec = rep.config["yangian_vector_count"]
    ok = rep.ok and fam == [f"1.{k}" for k in range(1, 9)] and dt < 600
    record(6, ok, f"yangian group {_summary(rep)}, families {fam[0]}..{fam[-1]}, "
                  f"{nvec} vectors from D=2 L=1 (every vector with at most one PBW factor), {dt:.0f}s")


# --- 7 ------------------------------------------------------------------------

ROTATION = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 1, 1]]


def test_7_coproduct():
    t0 = time.perf_counter()
    cfg = SuiteConfig(m=2, n=3, seed=1, samples=1, sign="theorem", depth=1, zero_mode_len=0,
                      mode="coproduct", max_vectors=None)
    rep = run_suite(cfg)
    S = S23
    pa = sample_assignment(11, S)
    hw1 = HighestWeight(sample_weights(11, S), pa.lvl)
    hw2 = HighestWeight(sample_weights(11, S, "hw2"), pa.lvl)
    plain = coproduct_binding(S, hw1, hw2, pa.e1, pa.e2, pa.alpha, pa.alpha + 1)
    rotated = coproduct_binding(S, hw1, hw2, pa.e1, pa.e2, pa.alpha, pa.alpha + 1, rotation=ROTATION)
    vecs = tensor_vectors(S, 1, 0)
    rot_bad = sum(plain.apply("h", i, 1, v) != rotated.apply("h", i, 1, v) for v in vecs for i in S.nodes)
    casimir_same = all(_casimir(dual_basis(S, r)) == _casimir(dual_basis(S, r, ROTATION))
                       for r in positive_roots(S, 2) if not r.is_real)
    dt = time.perf_counter() - t0
    ok = rep.ok and rot_bad == 0 and casimir_same and dt < 600
    record(7, ok, f"coproduct {_summary(rep)} on all {rep.config['vector_count']} pairs of depth<=1 vectors; "
                  f"Delta(h_i1) rotated vs plain on all 676 pairs: {rot_bad} differences; "
                  f"imaginary Casimir invariant: {casimir_same}, {dt:.0f}s")


def _casimir(pairs):
    out = {}
    for p in pairs:
        for t1, c1 in p.x_plus.items():
            for t2, c2 in p.x_minus.items():
                out[(t1, t2)] = out.get((t1, t2), 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


# --- 8 ------------------------------------------------------------------------

def test_8_j_identities():
    t0 = time.perf_counter()
    cfg = SuiteConfig(m=2, n=3, seed=1, samples=1, sign="theorem", depth=2, zero_mode_len=1, mode="j", max_vectors=96)
    rep = run_suite(cfg)
    dt = time.perf_counter() - t0
    fam = sorted({r.family for r in rep.records})
    ok = rep.ok and fam == ["3.3.1", "3.3.2", "3.3.3", "3.3.4"] and dt < 300
    record(8, ok, f"J identities {_summary(rep)}, {rep.config['vector_count']} vectors from D=2 L=1, {dt:.0f}s")


# --- 9 ------------------------------------------------------------------------

def test_9_kac_duality():
    S = S23
    tensor = TensorModule(*(VermaModule(S, HighestWeight(sample_weights("1/kac", S, t), Fraction(0))) for t in ("hw", "hw2")))
    vecs = kac_vectors(S)
    triples = kac_samples(S, 20, 1)
    reports = [kac_identity_check(S, a, b, z, tensor, vecs) for a, b, z in triples]
    passed = sum(r.passed for r in reports)
    modes = max(max(abs(a.s), abs(b.s)) for a, b, _ in triples)
    record(9, passed == 20, f"Kac identity {passed}/20 triples (max mode {modes}, z in g_(alpha-beta)) on {len(vecs)} tensor vectors")


# --- 10 -----------------------------------------------------------------------

def _random_element(rng, size):
    return LoopElement({(rng.randint(1, size.N), rng.randint(1, size.N), rng.randint(-2, 2)): Fraction(rng.randint(-4, 4) or 1)
                        for _ in range(3)})


def test_10_automorphisms():
    S = S23
    rng = random.Random("acceptance-10")
    even = [i for i in S.nodes if S.node_parity(i) == 0]
    kappa_ok = kappa_n = 0
    for _ in range(60):
        i = rng.choice(even)
        x, y = _random_element(rng, S), _random_element(rng, S)
        kappa_n += 1
        kappa_ok += kappa(S, tau(S, i, x), tau(S, i, y)) == kappa(S, x, y)
    root_ok = root_n = 0
    for i in even:
        for root in positive_roots(S, 2):
            if root.is_real:
                for p in dual_basis(S, root):
                    root_n += 1
                    root_ok += in_root_space(S, tau(S, i, p.x_plus), reflect(S, i, root))
    E1, E2, ALPHA = Fraction(3, 7), Fraction(-1, 5), Fraction(2, 9)
    M = VermaModule(S, HighestWeight(sample_weights(10, S), level_value(2, 3, E1, E2)))
    basis = make_vectors(S, 2, 1, 96, seed=10)
    h_ok = x_ok = 0
    for i in S.nodes:
        h = ev_gen(S, "h", i, 1, E1, E2, ALPHA)
        xp, xm = ev_gen(S, "x+", i, 1, E1, E2, ALPHA), ev_gen(S, "x-", i, 1, E1, E2, ALPHA)
        wh, wx = omega_transform(h), omega_transform(xp)
        sgn = (-1) ** S.p(i)  # p(0) = p(m+n)
        assert omega_scale(S, i) == sgn
        h_ok += all(apply(M, wh, v) == apply(M, h, v) for v in basis)
        x_ok += all(apply(M, wx, v) == scale_vec(apply(M, xm, v), sgn) for v in basis)
    N = S.N
    ok = kappa_ok == kappa_n and root_ok == root_n and h_ok == x_ok == N
    record(10, ok, f"tau (even nodes {even}): kappa {kappa_ok}/{kappa_n}, root spaces {root_ok}/{root_n}; "
                   f"omega fixes ev(h_i1) at {h_ok}/{N} nodes, omega ev(x+_i1) = (-1)^p(i) ev(x-_i1) at {x_ok}/{N} nodes "
                   f"on {len(basis)} vectors")


# --- 11 -----------------------------------------------------------------------

def test_11_telescoping():
    t0 = time.perf_counter()
    S = S23
    E1, E2 = Fraction(3, 7), Fraction(-1, 5)
    M = VermaModule(S, HighestWeight(sample_weights(11, S), level_value(2, 3, E1, E2)))
    basis = pbw_monomials(S, 2, 2)
    bad = 0
    for i in range(1, S.N):
        series = OperatorExpr([ModeSeries(Fraction(1), (i, i, 0, -1), (i + 1, i + 1, 0, 1), 1, 1),
                               ModeSeries(Fraction(-1), (i, i, -1, -1), (i + 1, i + 1, 1, 1), 1, 1)])
        word = OperatorExpr([OperatorWord(Fraction(1), (unit(i, i), unit(i + 1, i + 1)))])
        for mono in basis:
            v = {mono: Fraction(1)}
            bad += apply(M, series, v) != apply(M, word, v)
    dt = time.perf_counter() - t0
    record(11, bad == 0, f"telescoping for i=1..{S.N - 1} on all {len(basis)} vectors of D=2 (L=2): "
                         f"{bad} mismatches, {dt:.0f}s")


# --- 12 -----------------------------------------------------------------------

def _cli(args, hashseed, out):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    env.pop("YF_SEED", None)
    proc = subprocess.run([sys.executable, "-m", "superyangian.cli", *args, "--out", str(out)],
                          env=env, capture_output=True, text=True)
    return proc.returncode, out.read_bytes()


def test_12_determinism(tmp_path):
    runs = {
        "verify-ev": ["verify-ev", "--depth", "1", "--zero-mode-len", "1", "--samples", "2", "--groups", "minimalistic,evaluation"],
        "verify-ev (failing)": ["verify-ev", "--depth", "1", "--zero-mode-len", "1", "--samples", "1",
                                "--groups", "minimalistic", "--no-enforce-level"],
        "verify-kac": ["verify-kac"],
        "verify-lie": ["verify-lie"],
    }
    same = []
    for name, args in runs.items():
        a = _cli(args, 0, tmp_path / "a.json")
        b = _cli(args, 12345, tmp_path / "b.json")
        json.loads(a[1])
        same.append((name, a == b))
    ok = all(s for _, s in same)
    record(12, ok, "byte-identical reports across processes with different hash seeds: "
                   + ", ".join(f"{n} {'yes' if s else 'NO'}" for n, s in same))
