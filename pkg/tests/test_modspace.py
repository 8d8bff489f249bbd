import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from psdo import GridSpec, Signal, Symbol, gaussian_window
from psdo.modspace import (
    INF,
    ExponentTuple,
    MixedNormParams,
    KERNEL_AXES,
    SYMBOL_AXES,
    as_exponent,
    conjugate_exponent,
    make_weight,
    trivial_weight,
    moderate_check,
    mixed_norm,
    modulation_norm,
    symbol_modulation_norm,
    hy_functional,
    holds_op_bound_exponents,
    holds_schatten_embedding_exponents,
    holds_wigner_product_exponents,
    holds_composition_exponents,
    holds_composition_exponents_l2,
    holds_kernel_weight_bound,
    holds_kernel_symbol_weight_equiv,
    holds_wigner_weight_bound,
    holds_op_weight_bound,
    holds_composition_weight_bound,
)
from psdo.wigner import TimeFrequencyArray
from psdo.errors import (
    ArityMismatch,
    DomainMismatch,
    InvalidExponent,
    InvalidParams,
    SizeLimit,
    TooFewEntries,
    ZeroWindow,
)


# ---------------------------------------------------------------------------
# weights


def test_make_weight_values():
    w0 = make_weight("polynomial", s=0.0)
    assert w0.evaluate(np.array([3.0, -4.0])) == 1.0
    w2 = make_weight("polynomial", s=2.0)
    assert w2.evaluate(np.zeros(2)) == 1.0
    assert w2.evaluate(np.array([3.0, 4.0])) == pytest.approx(26.0)  # 1 + 25
    we = make_weight("exponential", c=1.0, s=1.0)
    assert we.evaluate(np.array([1.0, 0.0])) == pytest.approx(math.e)


def test_make_weight_validation():
    with pytest.raises(InvalidParams):
        make_weight("exponential", c=1.0, s=0.5)
    with pytest.raises(InvalidParams):
        make_weight("nope", s=1.0)
    with pytest.raises(InvalidParams):
        make_weight("custom", samples=np.array([[1.0, -1.0], [1.0, 1.0]]))
    with pytest.raises(InvalidParams):
        make_weight("polynomial", axes=("pos", "bogus"), s=1.0)


def test_weight_product_and_inverse():
    w1 = make_weight("polynomial", s=1.0)
    w2 = make_weight("exponential", c=0.5, s=1.0)
    prod = make_weight("product", factors=(w1, w2))
    assert prod.axes == ("pos", "freq", "pos", "freq")
    X = np.array([1.0, 2.0, 0.5, -0.5])
    assert prod.evaluate(X) == pytest.approx(w1.evaluate(X[:2]) * w2.evaluate(X[2:]))
    inv = prod.inverse()
    assert inv.evaluate(X) == pytest.approx(1.0 / prod.evaluate(X))


def test_custom_weight_sampling(grid9):
    samples = np.full((9, 9), 2.0)
    w = make_weight("custom", samples=samples)
    np.testing.assert_array_equal(w.sample(grid9), samples)
    with pytest.raises(DomainMismatch):
        w.evaluate(np.zeros(2))


def test_moderate_check_examples(grid9):
    one = trivial_weight()
    ok, c = moderate_check(one, one, grid9)
    assert ok and c == pytest.approx(1.0)

    p1 = make_weight("polynomial", s=1.0)
    ok, c = moderate_check(p1, p1, grid9)
    assert ok and c <= math.sqrt(2.0) + 1e-12

    e1 = make_weight("exponential", c=1.0, s=1.0)
    ok, c = moderate_check(e1, e1, grid9)
    assert ok and c <= 1.0 + 1e-12


def test_moderate_polynomial_family(grid9):
    # (1+|X+Y|^2)^{s/2} <= 2^{|s|/2} (1+|X|^2)^{s/2} (1+|Y|^2)^{|s|/2}
    for s in (-2.0, -1.0, 0.0, 1.0, 2.0):
        w = make_weight("polynomial", s=s)
        v = make_weight("polynomial", s=abs(s))
        ok, c = moderate_check(w, v, grid9)
        assert ok and c <= 2.0 ** (abs(s) / 2.0) + 1e-12


def test_mixed_norm_p_equals_q_nesting(rng, grid9):
    # p == q collapses to the plain weighted l^p norm of the flattened array
    F = TimeFrequencyArray(grid9, rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9)))
    w = make_weight("polynomial", s=1.0)
    for p in (1.0, 2.0, 3.0, math.inf):
        got = mixed_norm(F, MixedNormParams(p, p), w)
        flat = np.abs(F.data * w.sample(grid9)).ravel()
        want = flat.max() if math.isinf(p) else (flat**p).sum() ** (1 / p)
        assert got == pytest.approx(want, rel=1e-13)


def test_moderate_check_domain_mismatch(grid9):
    with pytest.raises(DomainMismatch):
        moderate_check(trivial_weight(), trivial_weight(SYMBOL_AXES), grid9)


def test_moderate_check_sampled_path(grid9):
    w = make_weight("polynomial", axes=SYMBOL_AXES, s=1.0)
    ok, c = moderate_check(w, w, grid9, pair_limit=10, sample_pairs=500, seed=1)
    assert ok and 0.0 < c <= math.sqrt(2.0) + 1e-12


# ---------------------------------------------------------------------------
# norms


def test_mixed_norm_single_point(grid9):
    F = np.zeros((9, 9), dtype=complex)
    F[4, 7] = 3.0 - 4.0j
    tf = TimeFrequencyArray(grid9, F)
    for p, q in ((1, 1), (2, 3), (math.inf, math.inf)):
        assert mixed_norm(tf, MixedNormParams(p, q)) == pytest.approx(5.0)


def test_mixed_norm_frobenius(rng, grid9):
    F = TimeFrequencyArray(grid9, rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9)))
    assert mixed_norm(F, MixedNormParams(2, 2)) == pytest.approx(np.linalg.norm(F.data))


def test_mixed_norm_single_column(rng, grid9):
    F = np.zeros((9, 9), dtype=complex)
    F[:, 0] = rng.standard_normal(9)
    w = make_weight("polynomial", s=1.0)
    got = mixed_norm(TimeFrequencyArray(grid9, F), MixedNormParams(1, math.inf), w)
    assert got == pytest.approx(np.sum(np.abs(F[:, 0]) * w.sample(grid9)[:, 0]))


@given(st.sampled_from([1.0, 1.5, 2.0, 3.0, math.inf]), st.sampled_from([1.0, 1.5, 2.0, 3.0, math.inf]))
def test_mixed_norm_monotone_in_p(p1, p2):
    if p1 > p2:
        p1, p2 = p2, p1
    g = GridSpec(1, 5)
    rng = np.random.default_rng(11)
    F = TimeFrequencyArray(g, rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
    hi = mixed_norm(F, MixedNormParams(p2, 2))
    lo = mixed_norm(F, MixedNormParams(p1, 2))
    assert hi <= lo * (1 + 1e-14)


def test_modulation_norm_l2(rng, grid9):
    f = Signal.random(grid9, rng)
    assert modulation_norm(f, MixedNormParams(2, 2)) == pytest.approx(f.norm(), rel=1e-12)
    assert modulation_norm(Signal(grid9, np.zeros(9)), MixedNormParams(2, 2)) == 0.0


def test_modulation_norm_zero_window(rng, grid9):
    with pytest.raises(ZeroWindow):
        modulation_norm(Signal.random(grid9, rng), MixedNormParams(2, 2),
                        phi=Signal(grid9, np.zeros(9)))


def test_window_equivalence_bounded(rng, grid9):
    phi1 = gaussian_window(grid9)
    chirp = np.exp(2j * np.pi * np.arange(9) / 9)
    phi2 = Signal(grid9, phi1.data + 0.3 * chirp * phi1.data)
    params = MixedNormParams(1, math.inf)
    ratios = []
    for _ in range(20):
        f = Signal.random(grid9, rng)
        ratios.append(modulation_norm(f, params, phi=phi1) / modulation_norm(f, params, phi=phi2))
    assert all(math.isfinite(r) and r > 0 for r in ratios)
    assert max(ratios) / min(ratios) < 50
    assert max(ratios) / min(ratios) > 1.0  # the two windows genuinely differ


def test_translated_window_preserves_norms(rng, grid9):
    # a translated window only permutes the STFT: every norm is unchanged
    phi1 = gaussian_window(grid9)
    phi2 = Signal(grid9, np.roll(phi1.data, 2))
    f = Signal.random(grid9, rng)
    params = MixedNormParams(1, math.inf)
    assert modulation_norm(f, params, phi=phi1) == pytest.approx(
        modulation_norm(f, params, phi=phi2), rel=1e-12)


def test_symbol_modulation_norm_l2(rng, grid9):
    a = Symbol.random(grid9, rng)
    assert symbol_modulation_norm(a, MixedNormParams(2, 2)) == pytest.approx(a.norm(), rel=1e-12)
    zero = Symbol(grid9, np.zeros((9, 9)))
    assert symbol_modulation_norm(zero, MixedNormParams(2, 2)) == 0.0


def test_symbol_modulation_norm_constant_vs_direct():
    # a == 1, p = q = inf: sup |V_Phi 1| against the direct double sum
    g = GridSpec(1, 5)
    Phi = Symbol(g, gaussian_window(GridSpec(2, 5)).data.reshape(5, 5))
    n = 5
    worst = 0.0
    for eta in range(n):
        for y in range(n):
            acc = 0.0j
            for u in range(n):
                for v in range(n):
                    acc += np.conj(Phi.data[u, v]) * np.exp(-2j * np.pi * (u * eta + v * y) / n)
            worst = max(worst, abs(acc) / n)
    got = symbol_modulation_norm(Symbol.constant(g), MixedNormParams(math.inf, math.inf))
    assert got == pytest.approx(worst, rel=1e-12)


def test_symbol_modulation_norm_size_limit(rng):
    g = GridSpec(2, 9)
    with pytest.raises(SizeLimit):
        symbol_modulation_norm(Symbol.random(g, rng), MixedNormParams(2, 2))


# ---------------------------------------------------------------------------
# exponents


def test_exponent_parsing():
    assert as_exponent("3/2") == Fraction(3, 2)
    assert as_exponent("inf") is INF
    assert as_exponent(2) == 2
    assert as_exponent(1.5) == Fraction(3, 2)
    with pytest.raises(InvalidExponent):
        conjugate_exponent(0.5)


def test_conjugate_exponent():
    assert conjugate_exponent(1) is INF
    assert conjugate_exponent(INF) == 1
    assert conjugate_exponent(2) == 2
    assert conjugate_exponent(Fraction(3, 2)) == 3


def test_hy_functional_values():
    assert hy_functional((1, 1, 1)) == 2
    assert hy_functional((2, 2, 2)) == Fraction(1, 2)
    assert hy_functional((INF, INF, INF)) == -1
    assert hy_functional((2, 2, 2, 2)) == Fraction(1, 2)
    with pytest.raises(TooFewEntries):
        hy_functional((2, 2))


@given(st.permutations([1, 2, 3, INF]))
def test_hy_functional_permutation_invariant(perm):
    assert hy_functional(perm) == hy_functional([1, 2, 3, INF])


def test_op_bound_exponents():
    assert holds_op_bound_exponents(ExponentTuple(p=(2, 2, 2), q=(2, 2, 2)))
    # 1/p1 - 1/p2 = 1/2, 1 - 1/p - 1/q = 0: fails the equality
    assert not holds_op_bound_exponents(ExponentTuple(p=(2, 1, 2), q=(2, 2, 2)))
    with pytest.raises(ArityMismatch):
        holds_op_bound_exponents(ExponentTuple(p=(2, 2), q=(2, 2)))


def test_schatten_embedding_exponents():
    assert holds_schatten_embedding_exponents(ExponentTuple(p=(2, 1, INF), q=(2, 1, INF)))
    assert not holds_schatten_embedding_exponents(ExponentTuple(p=(2, 1, INF), q=(2, 3, INF)))


def test_wigner_product_exponents():
    assert holds_wigner_product_exponents(ExponentTuple(p=(2, 2, 2), q=(2, 2, 2)))
    assert holds_wigner_product_exponents(ExponentTuple(p=(1, 2, 2), q=(INF, 2, 2)))
    assert not holds_wigner_product_exponents(ExponentTuple(p=(2, 1, 1), q=(2, 2, 2)))


def test_composition_exponents():
    alltwo = ExponentTuple(p=(2, 2, 2), q=(2, 2, 2))
    assert holds_composition_exponents(alltwo)
    assert holds_composition_exponents_l2(alltwo)
    # an inf in a q slot forces 1/q' = 1 > 1/p
    bad = ExponentTuple(p=(2, 2, 2), q=(2, INF, 2))
    assert not holds_composition_exponents_l2(bad)
    ones = ExponentTuple(p=(1, 1, 1), q=(1, 1, 1))
    assert hy_functional(ones.p) == 2
    with pytest.raises(ArityMismatch):
        holds_composition_exponents(ExponentTuple(p=(2, 2), q=(2, 2)))


# ---------------------------------------------------------------------------
# weight condition estimates


def test_weight_bounds_trivial(grid9):
    one2 = trivial_weight()
    one4s = trivial_weight(SYMBOL_AXES)
    one4k = trivial_weight(KERNEL_AXES)
    for ok, c in (
        holds_kernel_weight_bound(one4k, one2, one2, grid9),
        holds_kernel_symbol_weight_equiv(one4k, one4s, 0.37, grid9),
        holds_wigner_weight_bound(one4s, one2, one2, 0.37, grid9),
        holds_op_weight_bound(one4s, one2, one2, 0.37, grid9),
        holds_composition_weight_bound((one4s, one4s, one4s), 0.37, grid9),
    ):
        assert ok and c == pytest.approx(1.0)


def test_wigner_weight_bound_polynomial(grid9):
    w0 = make_weight("polynomial", axes=SYMBOL_AXES, s=2.0)
    w1 = make_weight("polynomial", s=1.0)
    ok, c = holds_wigner_weight_bound(w0, w1, w1, 0.0, grid9)
    assert ok and math.isfinite(c)


def test_kernel_weight_bound_violation_grows():
    # omega2 = polynomial(1), omega1 = omega = 1: the quotient is unbounded,
    # so the worst constant must grow with the grid
    one2 = trivial_weight()
    one4k = trivial_weight(KERNEL_AXES)
    p1 = make_weight("polynomial", s=1.0)
    cs = []
    for n in (9, 17, 33):
        _, c = holds_kernel_weight_bound(one4k, one2, p1, GridSpec(1, n))
        cs.append(c)
    assert cs[0] < cs[1] < cs[2]


def test_weight_bound_axis_validation(grid9):
    one2 = trivial_weight()
    with pytest.raises(DomainMismatch):
        holds_kernel_weight_bound(trivial_weight(SYMBOL_AXES), one2, one2, grid9)
    with pytest.raises(ArityMismatch):
        holds_composition_weight_bound((trivial_weight(SYMBOL_AXES),), 0.0, grid9)


def test_composition_weight_bound_poly(grid9):
    # decaying omega_j make the product small somewhere: constant > 1
    wdec = make_weight("polynomial", axes=SYMBOL_AXES, s=-1.0)
    winc = make_weight("polynomial", axes=SYMBOL_AXES, s=2.0)
    ok, c = holds_composition_weight_bound((winc, wdec, wdec), 0.5, grid9)
    assert ok and math.isfinite(c) and c > 1.0
