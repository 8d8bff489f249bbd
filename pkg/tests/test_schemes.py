import math

import numpy as np
import pytest

from psdo import GridSpec, Symbol, quantize
from psdo.schemes import (
    SchemeSpec,
    quantize_scheme,
    born_jordan_quadrature,
    bj_multiplier,
    psi,
    psi0,
    psi_alternating,
    un_avg_multiplier,
    un_avg_multiplier_grid,
    sphere_average_exp,
)
from psdo.errors import InvalidDimension, InvalidParams, ModeMismatch, UnsupportedDimension


def test_scheme_spec_validation():
    with pytest.raises(InvalidParams):
        SchemeSpec("bogus")
    with pytest.raises(InvalidParams):
        SchemeSpec("un_avg", {"r": -1.0})
    with pytest.raises(InvalidParams):
        SchemeSpec("born_jordan", {"quad_nodes": 0})
    spec = SchemeSpec("un_avg_time", {"r": 0.5})
    assert spec.params["t_nodes"] == 20 and spec.params["angle_nodes"] == 64
    assert SchemeSpec.from_descriptor(spec.descriptor()) == spec


def test_bj_of_constant_is_identity(grid9):
    K = quantize_scheme(Symbol.constant(grid9), SchemeSpec("born_jordan")).data
    np.testing.assert_allclose(K, np.eye(9), atol=1e-13)


def test_t_half_is_weyl(rng, grid9):
    a = Symbol.random(grid9, rng)
    lhs = quantize_scheme(a, SchemeSpec("t", {"t": 0.5})).data
    rhs = quantize_scheme(a, SchemeSpec("weyl")).data
    np.testing.assert_array_equal(lhs, rhs)


def test_kn_scheme_matches_quantize(rng, grid9):
    a = Symbol.random(grid9, rng)
    np.testing.assert_array_equal(quantize_scheme(a, SchemeSpec("kn")).data,
                                  quantize(a, 0.0).data)


def test_bj_closed_form_vs_quadrature(rng, grid9):
    for _ in range(5):
        a = Symbol.random(grid9, rng)
        closed = quantize_scheme(a, SchemeSpec("born_jordan")).data
        quad = born_jordan_quadrature(a, nodes=20).data
        assert np.abs(closed - quad).max() <= 1e-12 * a.norm()


def test_bj_requires_real_mode(rng):
    g = GridSpec(1, 9, "mod")
    with pytest.raises(ModeMismatch):
        quantize_scheme(Symbol.random(g, rng), SchemeSpec("born_jordan"))


def test_un_avg_r0_is_weyl(rng, grid9):
    a = Symbol.random(grid9, rng)
    lhs = quantize_scheme(a, SchemeSpec("un_avg", {"r": 0.0})).data
    np.testing.assert_array_equal(lhs, quantize(a, 0.5).data)
    lhs_t = quantize_scheme(a, SchemeSpec("un_avg_time", {"r": 0.0})).data
    np.testing.assert_array_equal(lhs_t, quantize(a, 0.5).data)


def test_un_avg_d1_is_two_point_average(rng, grid9):
    a = Symbol.random(grid9, rng)
    r = 0.7
    direct = quantize_scheme(a, SchemeSpec("un_avg", {"r": r})).data
    manual = 0.5 * (quantize(a, 0.5 + r).data + quantize(a, 0.5 - r).data)
    np.testing.assert_allclose(direct, manual, atol=1e-13 * a.norm())


def test_un_avg_multiplier_route(rng, grid9):
    from psdo.quantizer import _full_dft2

    a = Symbol.random(grid9, rng)
    for r in (0.5, 1.0):
        direct = quantize_scheme(a, SchemeSpec("un_avg", {"r": r})).data
        mult = un_avg_multiplier_grid(grid9, r)
        smoothed = Symbol(grid9, _full_dft2(_full_dft2(a.data, grid9) * mult, grid9, inverse=True))
        routed = quantize(smoothed, 0.5).data
        assert np.abs(direct - routed).max() <= 1e-11 * a.norm()


def test_un_avg_d2_runs_and_hermitian(rng):
    g = GridSpec(2, 5)
    a = Symbol(g, rng.standard_normal((25, 25)).astype(complex))
    K = quantize_scheme(a, SchemeSpec("un_avg", {"r": 0.5, "angle_nodes": 8})).data
    assert np.abs(K - K.conj().T).max() <= 1e-11 * np.linalg.norm(K)


def test_unsupported_dimension(rng):
    g = GridSpec(3, 3)
    a = Symbol.random(g, rng)
    with pytest.raises(UnsupportedDimension):
        quantize_scheme(a, SchemeSpec("un_avg", {"r": 0.5}))
    with pytest.raises(UnsupportedDimension):
        un_avg_multiplier(3, 0.5, [1, 0, 0], [0, 0, 1])


def test_scheme_hermiticity(rng, grid9):
    a = Symbol(grid9, rng.standard_normal((9, 9)).astype(complex))
    for spec in (SchemeSpec("weyl"), SchemeSpec("born_jordan"),
                 SchemeSpec("un_avg", {"r": 0.5}),
                 SchemeSpec("un_avg_time", {"r": 0.5, "t_nodes": 8, "angle_nodes": 8})):
        K = quantize_scheme(a, spec).data
        assert np.abs(K - K.conj().T).max() <= 1e-11 * np.linalg.norm(K)


def test_bj_multiplier_values():
    assert bj_multiplier(0.0) == 1.0
    assert bj_multiplier(math.pi) == pytest.approx(2.0 / math.pi)
    assert bj_multiplier(2.0 * math.pi) == pytest.approx(0.0, abs=1e-15)
    # series patch agrees with the direct formula across the switch point
    thetas = np.array([1e-5, 5e-5, 9.9e-5, 1.01e-4, 2e-4])
    direct = np.sin(thetas / 2) / (thetas / 2)
    np.testing.assert_allclose(bj_multiplier(thetas), direct, rtol=1e-12)


def test_psi_values():
    assert psi(1, 0.0) == 1.0
    assert psi(1, 1.0) == pytest.approx(1.5430806348, abs=1e-9)
    assert psi(2, 0.0) == pytest.approx(1.0)
    assert psi0(1, 0.0) == 0.0
    assert psi0(1, 1.0) == pytest.approx(1.1752012, abs=1e-6)
    with pytest.raises(InvalidDimension):
        psi(0, 1.0)
    with pytest.raises(InvalidParams):
        psi(2, -1.0)


def test_psi2_against_sphere_average():
    # the d=2 series is the circle average of e^{rho cos}; the Monte-Carlo
    # ratio must not depend on rho
    ratios = []
    for i, rho in enumerate((0.5, 1.0, 2.0)):
        mc = sphere_average_exp(rho, samples=200_000, seed=100 + i)
        ratios.append(mc / psi(2, rho))
    assert max(abs(r - ratios[0]) for r in ratios) <= 1e-3
    assert ratios[0] == pytest.approx(1.0, abs=1e-3)


def test_psi0_d2_quadrature():
    for r in (0.5, 2.0):
        t, w = np.polynomial.legendre.leggauss(40)
        tt = 0.5 * r * (t + 1.0)
        quad = 0.5 * r * np.sum(w * np.array([psi(2, x) for x in tt]))
        assert psi0(2, r) == pytest.approx(quad, rel=1e-12)


def test_psi0_small_r_limit():
    r = 1e-6
    for d in (1, 2, 3):
        assert abs(psi0(d, r) / r - psi(d, 0.0)) <= 1e-9


def test_psi_alternating():
    assert psi_alternating(1, 1.3) == pytest.approx(math.cos(1.3))
    # d = 2: equals the uniform circle average of e^{i rho cos}
    rho = 1.7
    alphas = 2 * np.pi * np.arange(20000) / 20000
    avg = np.mean(np.exp(1j * rho * np.cos(alphas)))
    assert psi_alternating(2, rho) == pytest.approx(float(avg.real), abs=1e-9)


def test_un_avg_multiplier_values():
    assert un_avg_multiplier(1, 0.0, [2.0], [3.0]) == 1.0
    assert un_avg_multiplier(1, 0.5, [2.0], [3.0]) == pytest.approx(math.cos(3.0))
    # d = 2 quadrature vs a dense stratified Monte-Carlo average over O(2)
    rng = np.random.default_rng(5)
    m, c, r = np.array([1.0, 0.5]), np.array([0.25, 1.0]), 0.8
    quad = un_avg_multiplier(2, r, m, c, angle_nodes=64)
    samples = 100_000
    alphas = 2 * np.pi * (np.arange(samples) + rng.random(samples)) / samples
    ca, sa = np.cos(alphas), np.sin(alphas)
    rot = np.exp(1j * r * ((ca * m[0] - sa * m[1]) * c[0] + (sa * m[0] + ca * m[1]) * c[1]))
    ref = np.exp(1j * r * ((ca * m[0] + sa * m[1]) * c[0] + (sa * m[0] - ca * m[1]) * c[1]))
    mc = 0.5 * (rot.mean() + ref.mean())
    assert abs(quad - mc) <= 1e-3


def test_un_avg_time_quadrature(rng, grid9):
    # (1/r) integral over [0, r] of the averages, checked against a fine sum
    a = Symbol.random(grid9, rng)
    r = 0.6
    got = quantize_scheme(a, SchemeSpec("un_avg_time", {"r": r, "t_nodes": 20})).data
    t, w = np.polynomial.legendre.leggauss(40)
    tt, ww = 0.5 * r * (t + 1.0), 0.5 * r * w
    want = sum(wi / r * quantize_scheme(a, SchemeSpec("un_avg", {"r": ti})).data
               for ti, wi in zip(tt, ww))
    assert np.abs(got - want).max() <= 1e-12 * a.norm()
