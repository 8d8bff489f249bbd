import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from psdo import (
    GridSpec,
    Signal,
    Symbol,
    OperatorMatrix,
    quantize,
    kernel_route,
    dequantize,
    symbol_transfer,
    rank_one_symbol,
)
from psdo.quantizer import MatrixParam, as_matrix_param
from psdo.errors import ModeMismatch, InvalidParams

from reference import naive_transfer, naive_op0


def test_matrix_param_coercion():
    A = as_matrix_param(0.5, 2)
    np.testing.assert_array_equal(A.entries, 0.5 * np.eye(2))
    assert not A.integer_flag
    assert as_matrix_param(1.0, 1).integer_flag
    assert MatrixParam.weyl(3).entries[0, 0] == 0.5
    with pytest.raises(InvalidParams):
        MatrixParam(np.zeros((2, 3)))
    with pytest.raises(InvalidParams):
        as_matrix_param(MatrixParam.zero(2), 1)


def test_mode_mismatch(grid9m, rng):
    a = Symbol.random(grid9m, rng)
    with pytest.raises(ModeMismatch):
        quantize(a, 0.5)
    with pytest.raises(ModeMismatch):
        symbol_transfer(a, 0.5)
    quantize(a, 1.0)  # integer parameter is fine


def test_transfer_zero_is_identity(grid9, rng):
    a = Symbol.random(grid9, rng)
    out = symbol_transfer(a, 0.0)
    np.testing.assert_array_equal(out.data, a.data)


def test_transfer_group_and_unitarity(grid9, rng):
    a = Symbol.random(grid9, rng)
    back = symbol_transfer(symbol_transfer(a, 0.7), -0.7)
    assert np.abs(back.data - a.data).max() <= 1e-12 * a.norm()
    assert abs(symbol_transfer(a, 0.7).norm() - a.norm()) <= 1e-12 * a.norm()


def test_transfer_delta_symbol_against_double_sum():
    # concentrated symbol, A = 1: compare against the O(n^4) double-sum oracle
    g = GridSpec(1, 9)
    a = np.zeros((9, 9), dtype=complex)
    a[3, 5] = 1.0
    got = symbol_transfer(Symbol(g, a), 1.0).data
    want = naive_transfer(a, 1.0, "real")
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_transfer_mod_against_double_sum(rng):
    g = GridSpec(1, 5, "mod")
    a = Symbol.random(g, rng)
    got = symbol_transfer(a, 2.0).data
    want = naive_transfer(a.data, 2.0, "mod")
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_quantize_constant_symbol(grid9):
    for A in (0.0, 1.0, 0.37):
        K = quantize(Symbol.constant(grid9), A).data
        np.testing.assert_allclose(K, np.eye(9), atol=1e-13)


def test_quantize_position_only_symbol(grid9, rng):
    gvals = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    a = Symbol(grid9, np.repeat(gvals[:, None], 9, axis=1))
    K = quantize(a, 0.0).data
    np.testing.assert_allclose(K, np.diag(gvals), atol=1e-13)


def test_quantize_frequency_only_symbol(rng):
    from reference import naive_fourier_multiplier_op

    g = GridSpec(1, 9)
    h = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    a = Symbol(g, np.repeat(h[None, :], 9, axis=0))
    K = quantize(a, 0.0).data
    np.testing.assert_allclose(K, naive_fourier_multiplier_op(h, 9), atol=1e-13)


def test_quantize_matches_naive_op0(rng):
    g = GridSpec(1, 7)
    a = Symbol.random(g, rng)
    np.testing.assert_allclose(quantize(a, 0.0).data, naive_op0(a.data), atol=1e-12)


def test_kernel_route_equals_quantize_mod(rng):
    g = GridSpec(1, 9, "mod")
    for t in (0, 1, -1, 2):
        a = Symbol.random(g, rng)
        dev = np.abs(kernel_route(a, t).data - quantize(a, t).data).max()
        assert dev <= 1e-12 * a.norm()


def test_kernel_route_equals_quantize_real(rng):
    g = GridSpec(1, 9)
    for t in (0.0, 0.5, 0.37, -0.2):
        a = Symbol.random(g, rng)
        dev = np.abs(kernel_route(a, t).data - quantize(a, t).data).max()
        assert dev <= 1e-12 * a.norm()


def test_kernel_route_2d_matrix_param(rng):
    g = GridSpec(2, 5, "mod")
    A = np.array([[1, 2], [0, 1]])
    a = Symbol.random(g, rng)
    dev = np.abs(kernel_route(a, A).data - quantize(a, A).data).max()
    assert dev <= 1e-12 * a.norm()


def test_kernel_route_constant_symbol(grid9):
    K = kernel_route(Symbol.constant(grid9), 0.37).data
    np.testing.assert_allclose(K, np.eye(9), atol=1e-13)


def test_dequantize_identity_and_diagonal(grid9):
    a = dequantize(OperatorMatrix.identity(grid9), 0.37).data
    np.testing.assert_allclose(a, np.ones((9, 9)), atol=1e-13)

    g = np.linspace(1, 2, 9).astype(complex)
    a2 = dequantize(OperatorMatrix(grid9, np.diag(g)), 0.0).data
    np.testing.assert_allclose(a2, np.repeat(g[:, None], 9, axis=1), atol=1e-13)


def test_dequantize_roundtrip(rng, grid9):
    a = Symbol.random(grid9, rng)
    back = dequantize(quantize(a, 0.37), 0.37)
    assert np.abs(back.data - a.data).max() <= 1e-12 * a.norm()


def test_transfer_composition_property(rng):
    # Op_{A1}(a) == Op_{A2}(T_{A1-A2} a) for matrix-valued parameters
    g = GridSpec(2, 5)
    a = Symbol.random(g, rng)
    A1 = rng.standard_normal((2, 2))
    A2 = rng.standard_normal((2, 2))
    lhs = quantize(a, A1).data
    rhs = quantize(symbol_transfer(a, as_matrix_param(A1, 2) - as_matrix_param(A2, 2)), A2).data
    assert np.abs(lhs - rhs).max() <= 1e-11 * np.linalg.norm(lhs)


def test_weyl_real_symbol_hermitian(rng, grid9):
    a = Symbol(grid9, rng.standard_normal((9, 9)).astype(complex))
    K = quantize(a, 0.5).data
    assert np.abs(K - K.conj().T).max() <= 1e-12 * np.linalg.norm(K)


def test_adjoint_law_general_matrix(rng):
    # Op_A(a)^* == Op_{I-A}(conj a) — the kernel argument x - A(x-y) swaps
    # to x - (I-A)(x-y) under (x, y) exchange, with no transpose
    for d, n in ((1, 9), (2, 5)):
        g = GridSpec(d, n)
        a = Symbol.random(g, rng)
        A = rng.standard_normal((d, d))
        lhs = quantize(a, A).data.conj().T
        rhs = quantize(Symbol(g, a.data.conj()), np.eye(d) - A).data
        assert np.abs(lhs - rhs).max() <= 1e-12 * np.linalg.norm(rhs)


def test_degenerate_single_point_grid(rng):
    # n = 1: every operator is a 1x1 scalar; all constants collapse to 1
    g = GridSpec(1, 1)
    a = Symbol(g, [[2.0 - 1.0j]])
    f1 = Signal(g, [1.5 + 0.5j])
    f2 = Signal(g, [-0.25j])
    assert quantize(a, 0.37).data[0, 0] == pytest.approx(2.0 - 1.0j)
    assert kernel_route(a, 0.37).data[0, 0] == pytest.approx(2.0 - 1.0j)
    assert dequantize(quantize(a, 0.37), 0.37).data[0, 0] == pytest.approx(2.0 - 1.0j)
    from psdo import wigner, stft

    assert wigner(f1, f2, 0.5).data[0, 0] == pytest.approx(f1.data[0] * np.conj(f2.data[0]))
    assert stft(f1, f2).data[0, 0] == pytest.approx(f1.data[0] * np.conj(f2.data[0]))
    K = quantize(rank_one_symbol(f1, f2, 0.5), 0.5).data
    assert K[0, 0] == pytest.approx(f1.data[0] * np.conj(f2.data[0]))


@given(st.complex_numbers(max_magnitude=5, allow_nan=False), st.complex_numbers(max_magnitude=5, allow_nan=False))
def test_quantize_linearity(alpha, beta):
    g = GridSpec(1, 5)
    rng = np.random.default_rng(3)
    a, b = Symbol.random(g, rng), Symbol.random(g, rng)
    comb = Symbol(g, alpha * a.data + beta * b.data)
    lhs = quantize(comb, 0.37).data
    rhs = alpha * quantize(a, 0.37).data + beta * quantize(b, 0.37).data
    assert np.abs(lhs - rhs).max() <= 1e-11 * (1 + abs(alpha) + abs(beta))


def test_rank_one_symbol_quantizes_to_outer(rng, grid9):
    f1 = Signal.random(grid9, rng)
    f2 = Signal.random(grid9, rng)
    for A in (0.0, 1.0, 0.5):
        a = rank_one_symbol(f1, f2, A)
        K = quantize(a, A).data
        np.testing.assert_allclose(K, np.outer(f1.data, f2.data.conj()), atol=1e-11)


def test_rank_one_projection_algebra(rng, grid9):
    f1 = Signal.random(grid9, rng)
    f2 = Signal.random(grid9, rng)
    K = quantize(rank_one_symbol(f1, f2, 0.5), 0.5).data
    out = K @ (f2.data / np.linalg.norm(f2.data) ** 2)
    np.testing.assert_allclose(out, f1.data, atol=1e-11)


def test_rank_one_delta_case(grid9):
    d0 = Signal.delta(grid9)
    a = rank_one_symbol(d0, d0, 0.0)
    K = quantize(a, 0.0).data
    want = np.zeros((9, 9))
    want[0, 0] = 1.0
    np.testing.assert_allclose(K, want, atol=1e-13)


def test_rank_one_bilinearity(rng, grid9):
    f1, f2 = Signal.random(grid9, rng), Signal.random(grid9, rng)
    a1 = rank_one_symbol(Signal(grid9, 2.0 * f1.data), f2, 0.37).data
    a2 = rank_one_symbol(f1, f2, 0.37).data
    np.testing.assert_allclose(a1, 2.0 * a2, atol=1e-12)
