from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superyangian.coeff import level_value
from superyangian.evaluation import (
    EvAction, ModeSeries, OperatorExpr, OperatorWord, apply, ev_gen, omega_loop, omega_scale,
    omega_transform, prefactor, series_term,
)
from superyangian.loop import LoopElement, bracket, central_c, unit
from superyangian.superdata import SuperSize
from superyangian.verma import HighestWeight, VermaModule, add_into, mono_depth, pbw_monomials, scale_vec

S = SuperSize(2, 3)
E1, E2, ALPHA = Fraction(3, 7), Fraction(-1, 5), Fraction(2, 9)
HBAR = E1 + E2
LAM = [Fraction(3, 2), Fraction(-1, 3), Fraction(5), Fraction(2, 7), Fraction(-4)]
M = VermaModule(S, HighestWeight(LAM, level_value(2, 3, E1, E2)))
VHW = M.highest_weight_vector()
BASIS = pbw_monomials(S, 2, 2)
BASIS_D2L1 = pbw_monomials(S, 2, 1)
# all depth-1 vectors plus every depth-2 vector built from non-zero modes
SMALL = pbw_monomials(S, 1, 1) + [m for m in pbw_monomials(S, 2, 0) if mono_depth(m) == 2]


def ev(kind, i, r=1):
    return ev_gen(S, kind, i, r, E1, E2, ALPHA)


def test_degree_zero_images():
    assert ev("x+", 0, 0).parts == [OperatorWord(Fraction(1), (unit(5, 1, 1),))]


def test_x_plus_one_structure():
    e = ev("x+", 1)
    base, s1, s2 = e.parts
    assert base == OperatorWord(ALPHA - E1, (unit(1, 2),))
    assert s1 == ModeSeries.standard(HBAR, 1, 2, 0, 0, 1, 1)
    assert s2 == ModeSeries.standard(HBAR, 1, 2, 1, 1, 2, 5)


def test_h0_word():
    words = [p for p in ev("h", 0).parts if isinstance(p, OperatorWord)]
    assert OperatorWord(HBAR, (unit(5, 5), unit(1, 1) - central_c())) in words


def test_prefactors():
    assert prefactor(S, 0, E1, ALPHA) == ALPHA + E1
    assert prefactor(S, 3, E1, ALPHA) == ALPHA - E1
    assert prefactor(S, 4, E1, ALPHA) == ALPHA


def test_ev_gen_errors():
    with pytest.raises(ValueError):
        ev_gen(S, "x+", 1, 2, E1, E2, ALPHA)
    with pytest.raises(IndexError):
        ev_gen(S, "h", 5, 1, E1, E2, ALPHA)


def test_x_plus_kills_highest_weight_vector():
    assert apply(M, ev("x+", 1), VHW) == {}


def test_h11_on_highest_weight_vector():
    l1, l2 = LAM[0], LAM[1]
    expected = (ALPHA - E1) * (l1 - l2) - HBAR * l1 * l2 + HBAR * l1 * l1
    assert apply(M, ev("h", 1), VHW) == {(): expected}


@pytest.mark.parametrize("i", range(1, 5))
def test_telescoping_identity(i):
    T = ModeSeries(Fraction(1), (i, i, 0, -1), (i + 1, i + 1, 0, 1), 1, 1)
    T1 = ModeSeries(Fraction(-1), (i, i, -1, -1), (i + 1, i + 1, 1, 1), 1, 1)
    word = OperatorExpr([OperatorWord(Fraction(1), (unit(i, i), unit(i + 1, i + 1)))])
    for mono in pbw_monomials(S, 2, 2):
        v = {mono: Fraction(1)}
        assert apply(M, OperatorExpr([T, T1]), v) == apply(M, word, v)


def test_series_truncation_safety():
    for kind in ("x+", "x-", "h"):
        for i in S.nodes:
            for part in ev(kind, i).parts:
                if not isinstance(part, ModeSeries):
                    continue
                for mono in SMALL:
                    v = {mono: Fraction(1)}
                    d = mono_depth(mono)
                    assert series_term(M, part, d + 1, v) == {}
                    assert series_term(M, part, d + 2, v) == {}


def test_grading():
    shift = {("x+", 0): -1, ("x-", 0): 1}
    for kind in ("x+", "x-", "h"):
        for i in S.nodes:
            for mono in BASIS_D2L1[:60]:
                out = apply(M, ev(kind, i), {mono: Fraction(1)})
                want = mono_depth(mono) + shift.get((kind, i), 0)
                assert all(mono_depth(m) == want for m in out)


@given(st.sampled_from(BASIS_D2L1), st.sampled_from(BASIS_D2L1), st.integers(-5, 5), st.integers(1, 5),
       st.sampled_from(["x+", "x-", "h"]), st.sampled_from(list(S.nodes)))
def test_linearity(m1, m2, a, b, kind, i):
    u, w = {m1: Fraction(1)}, {m2: Fraction(1)}
    combo = add_into(scale_vec(u, a), w, Fraction(1, b))
    lhs = apply(M, ev(kind, i), combo)
    rhs = add_into(scale_vec(apply(M, ev(kind, i), u), a), apply(M, ev(kind, i), w), Fraction(1, b))
    assert lhs == rhs
    both = ev(kind, i) + ev("h", 1)
    assert apply(M, both, u) == add_into(apply(M, ev(kind, i), u), apply(M, ev("h", 1), u))


# --- higher generators ----------------------------------------------------------

ACT = EvAction(M, E1, E2, ALPHA)
REC = EvAction(M, E1, E2, ALPHA, recursive_degree_one=True)


@pytest.mark.parametrize("kind", ["x+", "x-"])
@pytest.mark.parametrize("i", range(5))
def test_recursion_reproduces_degree_one(kind, i):
    for mono in BASIS_D2L1[:40]:
        v = {mono: Fraction(1)}
        assert REC.apply_gen(kind, i, 1, v) == ACT.apply_gen(kind, i, 1, v)


def test_h2_on_highest_weight_vector_is_scalar():
    for i in S.nodes:
        out = ACT.apply_gen("h", i, 2, VHW)
        assert set(out) <= {()}


def test_h12_commutes_with_h11():
    for mono in BASIS_D2L1[:30]:
        v = {mono: Fraction(1)}
        a = ACT.apply_gen("h", 1, 2, ACT.apply_gen("h", 1, 1, v))
        b = ACT.apply_gen("h", 1, 1, ACT.apply_gen("h", 1, 2, v))
        assert a == b


def test_v_on_highest_weight_vector():
    # only mode-0 positive roots could contribute, and x_alpha kills v_hw
    for i in S.nodes:
        h = ACT.apply_gen("h", i, 0, VHW)[()]
        assert ACT.apply_gen("v", i, 0, VHW) == {(): -HBAR / 2 * h * h}


# --- omega ---------------------------------------------------------------------

@given(st.integers(1, 5), st.integers(1, 5), st.integers(-3, 3), st.integers(1, 5), st.integers(1, 5), st.integers(-3, 3))
def test_omega_is_anti_automorphism(a, b, r, c, d, s):
    x, y = unit(a, b, r), unit(c, d, s)
    # omega(xy) = omega(y) omega(x) without a Koszul sign, hence omega[x, y] = [omega y, omega x]
    assert omega_loop(bracket(S, x, y)) == bracket(S, omega_loop(y), omega_loop(x))


def test_omega_literal_form_misses_affine_node():
    assert omega_loop(unit(5, 1, 1), mode_flip=False) == unit(1, 5, 1, -1)
    assert omega_loop(unit(5, 1, 1)) == unit(1, 5, -1)


@pytest.mark.parametrize("i", range(5))
def test_omega_fixes_h1(i):
    e, w = ev("h", i), omega_transform(ev("h", i))
    for mono in SMALL:
        v = {mono: Fraction(1)}
        assert apply(M, w, v) == apply(M, e, v)


@pytest.mark.parametrize("i", range(5))
def test_omega_swaps_x1(i):
    w = omega_transform(ev("x+", i))
    for mono in SMALL:
        v = {mono: Fraction(1)}
        assert apply(M, w, v) == scale_vec(apply(M, ev("x-", i), v), omega_scale(S, i))


def test_omega_involution():
    for kind in ("x+", "x-", "h"):
        for i in S.nodes:
            ww = omega_transform(omega_transform(ev(kind, i)))
            for mono in SMALL[:50]:
                v = {mono: Fraction(1)}
                assert apply(M, ww, v) == apply(M, ev(kind, i), v)
