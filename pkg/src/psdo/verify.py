"""Identity verification suite: every exact identity and estimate the
library relies on, runnable at a chosen grid size with a fixed seed.

Each check draws from its own PRNG stream (seeded by the global seed and
the check name), so reports are byte-reproducible regardless of execution
order or thread count.  Checks with tolerance None are report-only: they
record an empirical constant without judging it.
"""

from __future__ import annotations

import json
import math
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .grid import (
    GridSpec,
    Signal,
    Symbol,
    OperatorMatrix,
    dft,
    gaussian_window,
    index_coords,
    rep_coords,
)
from .quantizer import (
    MatrixParam,
    quantize,
    kernel_route,
    dequantize,
    symbol_transfer,
    _full_dft2,
)
from .wigner import (
    stft,
    wigner,
    weyl_wigner_stft_relation_check,
    stft_of_wigner_check,
    expop_stft_check,
    FOURD_LIMIT,
)
from . import modspace as ms
from .modspace import MixedNormParams, ExponentTuple, make_weight, trivial_weight
from .schatten import (
    singular_values,
    schatten_norm,
    symbol_schatten_norm,
    trace_pairing,
    duality_check,
    hoelder_check,
)
from .calculus import sharp, sharp_n, sharp_transfer_check
from . import schemes as sch
from .schemes import SchemeSpec, quantize_scheme, born_jordan_quadrature

__all__ = ["run_suite", "format_table", "report_to_json", "SUITES"]

SUITES = ("all", "calculus", "wigner", "modspace", "schatten", "schemes")


class SkipCheck(Exception):
    pass


@dataclass
class CheckDef:
    name: str
    suite: str
    identity: str
    tolerance: float  # None = report-only
    fn: object


CHECKS: list = []


def check(name, suite, identity, tolerance):
    def deco(fn):
        CHECKS.append(CheckDef(name, suite, identity, tolerance, fn))
        return fn

    return deco


class Context:
    """Grid parameters plus per-check split PRNG streams."""

    def __init__(self, n, d, seed):
        self.n, self.d, self.seed = n, d, seed

    def rng(self, name: str) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.seed, zlib.crc32(name.encode())]))

    def grid(self, mode="real") -> GridSpec:
        return GridSpec(self.d, self.n, mode)


def _rel(delta: float, scale: float) -> float:
    return delta / scale if scale > 0 else delta


def _unit_symbol(grid, rng) -> Symbol:
    a = Symbol.random(grid, rng)
    return Symbol(grid, a.data / np.linalg.norm(a.data))


def _unit_signal(grid, rng) -> Signal:
    f = Signal.random(grid, rng)
    return Signal(grid, f.data / np.linalg.norm(f.data))


# ---------------------------------------------------------------------------
# calculus suite


@check("transfer_composition", "calculus",
       "Op_A1(a) == Op_A2(T_{A1-A2} a) for (A1,A2) in {(0,1/2),(1,0),(0.37,-0.2)}", 1e-11)
def _c_transfer_composition(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("transfer_composition")
    worst = 0.0
    for a1, a2 in ((0.0, 0.5), (1.0, 0.0), (0.37, -0.2)):
        A1 = MatrixParam.scalar(a1, ctx.d)
        A2 = MatrixParam.scalar(a2, ctx.d)
        for _ in range(20):
            a = Symbol.random(grid, rng)
            lhs = quantize(a, A1)
            rhs = quantize(symbol_transfer(a, A1 - A2), A2)
            worst = max(worst, _rel(np.linalg.norm(lhs.data - rhs.data), np.linalg.norm(lhs.data)))
    return worst


@check("kernel_route_mod", "calculus",
       "kernel formula == multiplier route, integer A in {0,1,-1}, mode mod", 1e-12)
def _c_kernel_route_mod(ctx):
    grid = ctx.grid("mod")
    rng = ctx.rng("kernel_route_mod")
    worst = 0.0
    for t in (0, 1, -1):
        A = MatrixParam.scalar(t, ctx.d)
        for _ in range(5):
            a = _unit_symbol(grid, rng)
            worst = max(worst, float(np.abs(kernel_route(a, A).data - quantize(a, A).data).max()))
    return worst


@check("kernel_route_real", "calculus",
       "kernel formula (interpolated) == multiplier route, real A", 1e-12)
def _c_kernel_route_real(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("kernel_route_real")
    worst = 0.0
    for t in (0.5, 0.37, -0.2):
        A = MatrixParam.scalar(t, ctx.d)
        for _ in range(3):
            a = _unit_symbol(grid, rng)
            worst = max(worst, float(np.abs(kernel_route(a, A).data - quantize(a, A).data).max()))
    return worst


@check("transfer_unitarity", "calculus", "||T_A a||_2 == ||a||_2", 1e-12)
def _c_transfer_unitarity(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("transfer_unitarity")
    worst = 0.0
    for _ in range(5):
        a = Symbol.random(grid, rng)
        A = MatrixParam(rng.standard_normal((ctx.d, ctx.d)))
        ta = symbol_transfer(a, A)
        worst = max(worst, _rel(abs(ta.norm() - a.norm()), a.norm()))
    return worst


@check("transfer_group_law", "calculus", "T_A T_B == T_{A+B}", 1e-12)
def _c_transfer_group(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("transfer_group_law")
    worst = 0.0
    for _ in range(5):
        a = _unit_symbol(grid, rng)
        A = MatrixParam(rng.standard_normal((ctx.d, ctx.d)))
        B = MatrixParam(rng.standard_normal((ctx.d, ctx.d)))
        lhs = symbol_transfer(symbol_transfer(a, B), A)
        rhs = symbol_transfer(a, A + B)
        worst = max(worst, float(np.abs(lhs.data - rhs.data).max()))
    return worst


@check("dequantize_roundtrip", "calculus", "dequantize(quantize(a, A), A) == a", 1e-12)
def _c_dequantize_roundtrip(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("dequantize_roundtrip")
    worst = 0.0
    for t in (0.0, 0.37, 0.5):
        A = MatrixParam.scalar(t, ctx.d)
        a = Symbol.random(grid, rng)
        back = dequantize(quantize(a, A), A)
        worst = max(worst, _rel(np.linalg.norm(back.data - a.data), a.norm()))
    return worst


@check("op_constant_symbol", "calculus", "Op_A(1) == identity matrix", 1e-12)
def _c_op_constant(ctx):
    grid = ctx.grid("real")
    eye = np.eye(grid.size)
    worst = 0.0
    for t in (0.0, 0.37, 0.5):
        K = quantize(Symbol.constant(grid), MatrixParam.scalar(t, ctx.d))
        worst = max(worst, float(np.abs(K.data - eye).max()))
    return worst


@check("weyl_self_adjoint", "calculus", "real symbol, A = I/2: Op is Hermitian", 1e-11)
def _c_weyl_self_adjoint(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("weyl_self_adjoint")
    worst = 0.0
    for _ in range(5):
        a = Symbol(grid, rng.standard_normal((grid.size, grid.size)).astype(complex))
        K = quantize(a, MatrixParam.weyl(ctx.d)).data
        worst = max(worst, _rel(np.linalg.norm(K - K.conj().T), np.linalg.norm(K)))
    return worst


@check("adjoint_law", "calculus", "Op_A(a)^* == Op_{I-A}(conj a), A non-symmetric included", 1e-12)
def _c_adjoint_law(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("adjoint_law")
    worst = 0.0
    for _ in range(5):
        a = Symbol.random(grid, rng)
        A = MatrixParam(rng.standard_normal((ctx.d, ctx.d)))
        lhs = quantize(a, A).data.conj().T
        rhs = quantize(Symbol(grid, a.data.conj()), MatrixParam(np.eye(ctx.d)) - A).data
        worst = max(worst, _rel(np.abs(lhs - rhs).max(), np.linalg.norm(rhs)))
    return worst


@check("sharp_unit_law", "calculus", "1 #_A b == b #_A 1 == b", 1e-12)
def _c_sharp_unit(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("sharp_unit_law")
    one = Symbol.constant(grid)
    worst = 0.0
    for t in (0.0, 0.5, 0.37):
        A = MatrixParam.scalar(t, ctx.d)
        b = _unit_symbol(grid, rng)
        worst = max(worst, float(np.abs(sharp(one, b, A).data - b.data).max()))
        worst = max(worst, float(np.abs(sharp(b, one, A).data - b.data).max()))
    return worst


@check("sharp_associativity", "calculus", "(a # b) # c == a # (b # c)", 1e-11)
def _c_sharp_assoc(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("sharp_associativity")
    A = MatrixParam.weyl(ctx.d)
    worst = 0.0
    for _ in range(3):
        a, b, c = (_unit_symbol(grid, rng) for _ in range(3))
        lhs = sharp(sharp(a, b, A), c, A)
        rhs = sharp(a, sharp(b, c, A), A)
        worst = max(worst, float(np.abs(lhs.data - rhs.data).max()))
        worst = max(worst, float(np.abs(sharp_n((a, b, c), A).data - lhs.data).max()))
    return worst


@check("sharp_transfer", "calculus",
       "a #_A b == T_{A-B}^{-1}((T_{A-B}a) #_B (T_{A-B}b))", 1e-11)
def _c_sharp_transfer(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("sharp_transfer")
    worst = 0.0
    for A, B in ((0.5, 0.0), (0.0, 0.5), (0.37, -0.2)):
        a = _unit_symbol(grid, rng)
        b = _unit_symbol(grid, rng)
        worst = max(worst, sharp_transfer_check(a, b, A, B))
    return worst


@check("sharp_homomorphism", "calculus",
       "Op_A(a #_A b) == Op_A(a) Op_A(b), Op through the independent kernel route", 1e-11)
def _c_sharp_homomorphism(ctx):
    grid = ctx.grid("mod")
    rng = ctx.rng("sharp_homomorphism")
    A = MatrixParam.scalar(1, ctx.d)
    worst = 0.0
    for _ in range(3):
        a = _unit_symbol(grid, rng)
        b = _unit_symbol(grid, rng)
        lhs = kernel_route(sharp(a, b, A), A).data
        rhs = kernel_route(a, A).data @ kernel_route(b, A).data
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


# ---------------------------------------------------------------------------
# wigner suite


@check("rank_one", "wigner",
       "quantize(n^{d/2} W^A_{f1,f2}, A) == outer(f1, conj f2), A in {0, 1, 1/2}", 1e-12)
def _w_rank_one(ctx):
    worst = 0.0
    for t, mode in ((0, "mod"), (1, "mod"), (0.5, "real")):
        grid = ctx.grid(mode)
        rng = ctx.rng(f"rank_one_{t}_{mode}")
        A = MatrixParam.scalar(t, ctx.d)
        scale = grid.size ** (0.5)
        for _ in range(20):
            f1 = _unit_signal(grid, rng)
            f2 = _unit_signal(grid, rng)
            W = wigner(f1, f2, A).data
            Q = quantize(Symbol(grid, scale * W), A).data
            worst = max(worst, float(np.abs(Q - np.outer(f1.data, np.conj(f2.data))).max()))
    return worst


@check("wigner_pseudo_link", "wigner",
       "(Op_A(a) f, g) == n^{-d/2} (a, W^A_{g,f}), both modes", 1e-11)
def _w_link(ctx):
    worst = 0.0
    for t, mode in ((1, "mod"), (0.37, "real"), (0.5, "real")):
        grid = ctx.grid(mode)
        rng = ctx.rng(f"link_{t}_{mode}")
        A = MatrixParam.scalar(t, ctx.d)
        for _ in range(20):
            a = Symbol.random(grid, rng)
            f = Signal.random(grid, rng)
            g = Signal.random(grid, rng)
            lhs = np.vdot(g.data, quantize(a, A).data @ f.data)
            W = wigner(g, f, A).data
            rhs = np.vdot(W, a.data) / np.sqrt(grid.size)
            worst = max(worst, _rel(abs(lhs - rhs), abs(lhs)))
    return worst


@check("wigner_mod_equals_real", "wigner",
       "direct modular Wigner sum == dequantization route for integer A", 1e-12)
def _w_mod_real(ctx):
    rng = ctx.rng("wigner_mod_equals_real")
    worst = 0.0
    for t in (0, 1, -1):
        gm = ctx.grid("mod")
        gr = ctx.grid("real")
        f1 = _unit_signal(gm, rng)
        f2 = _unit_signal(gm, rng)
        Wm = wigner(f1, f2, MatrixParam.scalar(t, ctx.d)).data
        Wr = wigner(Signal(gr, f1.data), Signal(gr, f2.data), MatrixParam.scalar(t, ctx.d)).data
        worst = max(worst, float(np.abs(Wm - Wr).max()))
    return worst


@check("wigner_kn_closed_form", "wigner",
       "W^0(j,k) == f1(j) e^{-2i pi <j,k>/n} conj((F f2)(k))", 1e-12)
def _w_kn_closed(ctx):
    grid = ctx.grid("mod")
    rng = ctx.rng("wigner_kn_closed_form")
    f1 = _unit_signal(grid, rng)
    f2 = _unit_signal(grid, rng)
    W = wigner(f1, f2, MatrixParam.zero(ctx.d)).data
    coords = index_coords(grid)
    dot = (coords @ coords.T) % grid.n
    closed = f1.data[:, None] * np.exp(-2j * np.pi * dot / grid.n) * np.conj(dft(f2).data)[None, :]
    return float(np.abs(W - closed).max())


@check("stft_moyal", "wigner", "||V_phi f||_2 == ||phi||_2 ||f||_2", 1e-12)
def _w_stft_moyal(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("stft_moyal")
    worst = 0.0
    for _ in range(5):
        f = Signal.random(grid, rng)
        phi = Signal.random(grid, rng)
        V = stft(f, phi)
        worst = max(worst, _rel(abs(V.norm() - f.norm() * phi.norm()), f.norm() * phi.norm()))
    return worst


@check("wigner_moyal", "wigner",
       "||W^A_{f1,f2}||_2 == ||f1||_2 ||f2||_2, integer A (unimodular shear)", 1e-11)
def _w_wigner_moyal(ctx):
    grid = ctx.grid("mod")
    rng = ctx.rng("wigner_moyal")
    worst = 0.0
    for t in (0, 1, 2):
        f1 = Signal.random(grid, rng)
        f2 = Signal.random(grid, rng)
        W = wigner(f1, f2, MatrixParam.scalar(t, ctx.d))
        worst = max(worst, _rel(abs(W.norm() - f1.norm() * f2.norm()), f1.norm() * f2.norm()))
    return worst


@check("weyl_wigner_stft_relation", "wigner",
       "W^{(n+1)/2 I}_{f,phi}(j,k) == e^{4i pi <j,k>/n} V_{phi^}f(2j, 2k)", 1e-10)
def _w_weyl_wigner_stft(ctx):
    grid = ctx.grid("mod")
    rng = ctx.rng("weyl_wigner_stft_relation")
    worst = 0.0
    for _ in range(3):
        f = _unit_signal(grid, rng)
        phi = _unit_signal(grid, rng)
        worst = max(worst, weyl_wigner_stft_relation_check(f, phi))
    return worst


@check("stft_of_wigner", "wigner",
       "V_{W^A_{phi,psi}} W^A_{f,g} == phase-sheared product of two STFTs, A in {0,1}", 1e-10)
def _w_stft_of_wigner(ctx):
    grid = ctx.grid("mod")
    rng = ctx.rng("stft_of_wigner")
    worst = 0.0
    for t in (0, 1):
        f, g = _unit_signal(grid, rng), _unit_signal(grid, rng)
        phi, psi = _unit_signal(grid, rng), _unit_signal(grid, rng)
        worst = max(worst, stft_of_wigner_check(f, g, phi, psi, MatrixParam.scalar(t, ctx.d),
                                                rng=ctx.rng(f"stft_of_wigner_sample_{t}")))
    return worst


@check("expop_stft_zero", "wigner",
       "transfer/STFT commutation at A = 0 is an exact identity (deviation 0.0)", 0.0)
def _w_expop_zero(ctx):
    grid = ctx.grid("mod")
    if grid.size**4 > FOURD_LIMIT:
        raise SkipCheck("dense 4d array exceeds cap at this grid")
    rng = ctx.rng("expop_stft_zero")
    a = _unit_symbol(grid, rng)
    phi = _unit_symbol(grid, rng)
    return expop_stft_check(a, phi, MatrixParam.zero(ctx.d))


@check("expop_stft", "wigner",
       "V_{T_A phi}(T_A a)(x,xi,eta,y) == e^{2i pi <Ay,eta>/n} V_phi a(x+Ay, xi+A*eta, eta, y)", 1e-10)
def _w_expop(ctx):
    grid = ctx.grid("mod")
    if grid.size**4 > FOURD_LIMIT:
        raise SkipCheck("dense 4d array exceeds cap at this grid")
    rng = ctx.rng("expop_stft")
    worst = 0.0
    for t in (1, -1):
        a = _unit_symbol(grid, rng)
        phi = _unit_symbol(grid, rng)
        worst = max(worst, expop_stft_check(a, phi, MatrixParam.scalar(t, ctx.d)))
    return worst


# ---------------------------------------------------------------------------
# modspace suite


@check("modulation_norm_l2", "modspace",
       "M^{2,2} norm with unit window == l2 norm", 1e-12)
def _m_modnorm_l2(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("modulation_norm_l2")
    params = MixedNormParams(2, 2)
    worst = 0.0
    for _ in range(5):
        f = Signal.random(grid, rng)
        worst = max(worst, _rel(abs(ms.modulation_norm(f, params) - f.norm()), f.norm()))
    return worst


@check("symbol_modulation_norm_l2", "modspace",
       "symbol M^{2,2} norm with unit window == Frobenius norm", 1e-12)
def _m_symbol_modnorm_l2(ctx):
    grid = ctx.grid("real")
    if grid.size**4 > FOURD_LIMIT:
        raise SkipCheck("dense 4d array exceeds cap at this grid")
    rng = ctx.rng("symbol_modulation_norm_l2")
    a = Symbol.random(grid, rng)
    val = ms.symbol_modulation_norm(a, MixedNormParams(2, 2))
    return _rel(abs(val - a.norm()), a.norm())


@check("mixed_norm_monotonicity", "modspace",
       "p1 <= p2 implies ||.||_{l^{p2}} <= ||.||_{l^{p1}} in each slot", 1e-14)
def _m_monotonicity(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("mixed_norm_monotonicity")
    from .wigner import TimeFrequencyArray

    F = TimeFrequencyArray(grid, rng.standard_normal((grid.size, grid.size))
                           + 1j * rng.standard_normal((grid.size, grid.size)))
    ladder = (1.0, 1.5, 2.0, 3.0, math.inf)
    worst = 0.0
    for q in (1.0, 2.0, math.inf):
        vals = [ms.mixed_norm(F, MixedNormParams(p, q)) for p in ladder]
        for lo, hi in zip(vals, vals[1:]):
            worst = max(worst, _rel(max(0.0, hi - lo), abs(lo)))
    for p in (1.0, 2.0, math.inf):
        vals = [ms.mixed_norm(F, MixedNormParams(p, q)) for q in ladder]
        for lo, hi in zip(vals, vals[1:]):
            worst = max(worst, _rel(max(0.0, hi - lo), abs(lo)))
    return worst


@check("window_equivalence", "modspace",
       "two fixed windows give equivalent M^{p,q} norms; reports the worst ratio", None)
def _m_window_equiv(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("window_equivalence")
    phi1 = gaussian_window(grid)
    shift = np.exp(2j * np.pi * rep_coords(grid).sum(axis=1) / grid.n)
    phi2 = Signal(grid, (phi1.data + 0.3 * shift * phi1.data))
    params = MixedNormParams(1, math.inf)
    worst = 1.0
    for _ in range(100):
        f = Signal.random(grid, rng)
        r = ms.modulation_norm(f, params, phi=phi1) / ms.modulation_norm(f, params, phi=phi2)
        worst = max(worst, r, 1.0 / r)
    if not math.isfinite(worst):
        raise InvalidParams("window-equivalence ratio diverged")
    return worst


@check("moderate_trivial", "modspace", "omega == 1 is 1-moderate with constant 1", 1e-15)
def _m_moderate_trivial(ctx):
    grid = ctx.grid("real")
    ok, c = ms.moderate_check(trivial_weight(), trivial_weight(), grid)
    return abs(c - 1.0) if ok else math.inf


@check("moderate_peetre", "modspace",
       "polynomial(1) is polynomial(1)-moderate with constant <= sqrt(2)", 1e-9)
def _m_moderate_peetre(ctx):
    grid = ctx.grid("real")
    w = make_weight("polynomial", s=1.0)
    ok, c = ms.moderate_check(w, w, grid)
    return max(0.0, c - math.sqrt(2.0)) if ok else math.inf


@check("moderate_exponential", "modspace",
       "exponential(1,1) is self-moderate with constant <= 1 (triangle inequality)", 1e-9)
def _m_moderate_exponential(ctx):
    grid = ctx.grid("real")
    w = make_weight("exponential", c=1.0, s=1.0)
    ok, c = ms.moderate_check(w, w, grid)
    return max(0.0, c - 1.0) if ok else math.inf


@check("exponent_functional_values", "modspace",
       "Hoelder-Young functional and predicate spot values (exact rationals)", 0.5)
def _m_exponent_values(ctx):
    from fractions import Fraction

    bad = 0
    bad += ms.hy_functional((1, 1, 1)) != 2
    bad += ms.hy_functional((2, 2, 2)) != Fraction(1, 2)
    bad += ms.hy_functional((math.inf, math.inf, math.inf)) != -1
    bad += ms.hy_functional((2, 2, 2, 2)) != Fraction(1, 2)
    t = ExponentTuple(p=(2, 2, 2), q=(2, 2, 2))
    bad += not ms.holds_op_bound_exponents(t)
    bad += not ms.holds_wigner_product_exponents(t)
    bad += not ms.holds_composition_exponents(t)
    bad += not ms.holds_composition_exponents_l2(t)
    t2 = ExponentTuple(p=(2, 1, math.inf), q=(2, 1, math.inf))
    bad += not ms.holds_schatten_embedding_exponents(t2)
    t3 = ExponentTuple(p=(2, 2, 2), q=(2, math.inf, 2))
    bad += ms.holds_composition_exponents_l2(t3)
    return float(bad)


@check("weight_bounds_trivial", "modspace",
       "all weight-condition constants equal 1 for trivial weights", 1e-12)
def _m_weight_trivial(ctx):
    grid = ctx.grid("real")
    one2 = trivial_weight(ms.TF_AXES)
    one4s = trivial_weight(ms.SYMBOL_AXES)
    one4k = trivial_weight(ms.KERNEL_AXES)
    A = MatrixParam.scalar(0.37, ctx.d)
    worst = 0.0
    for ok, c in (
        ms.holds_kernel_weight_bound(one4k, one2, one2, grid),
        ms.holds_kernel_symbol_weight_equiv(one4k, one4s, A, grid),
        ms.holds_wigner_weight_bound(one4s, one2, one2, A, grid),
        ms.holds_op_weight_bound(one4s, one2, one2, A, grid),
        ms.holds_composition_weight_bound((one4s, one4s, one4s), A, grid),
    ):
        worst = max(worst, math.inf if not ok else abs(c - 1.0))
    return worst


@check("wigner_weight_polynomial", "modspace",
       "polynomial weights satisfy the Wigner-map bound; reports the constant", None)
def _m_weight_poly(ctx):
    grid = ctx.grid("real")
    w0 = make_weight("polynomial", axes=ms.SYMBOL_AXES, s=2.0)
    w1 = make_weight("polynomial", s=1.0)
    ok, c = ms.holds_wigner_weight_bound(w0, w1, w1, MatrixParam.zero(ctx.d), grid)
    if not ok:
        raise InvalidParams("constant not finite")
    return c


# ---------------------------------------------------------------------------
# schatten suite


@check("hs_kernel_identity", "schatten", "||T||_{I_2} == Frobenius norm of the kernel", 1e-12)
def _s_hs_kernel(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("hs_kernel_identity")
    T = OperatorMatrix(grid, rng.standard_normal((grid.size, grid.size))
                       + 1j * rng.standard_normal((grid.size, grid.size)))
    return _rel(abs(schatten_norm(T, 2) - T.norm()), T.norm())


@check("symbol_hs_identity", "schatten",
       "||Op_A(a)||_{I_2} == n^{-d/2} ||a||_2 for every A", 1e-11)
def _s_symbol_hs(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("symbol_hs_identity")
    worst = 0.0
    for t in (0.0, 0.5, 0.37):
        a = Symbol.random(grid, rng)
        val = symbol_schatten_norm(a, MatrixParam.scalar(t, ctx.d), 2)
        want = a.norm() / math.sqrt(grid.size)
        worst = max(worst, _rel(abs(val - want), want))
    return worst


@check("schatten_transfer_invariance", "schatten",
       "transferring a symbol between calculi preserves every Schatten norm", 1e-11)
def _s_transfer_invariance(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("schatten_transfer_invariance")
    a = Symbol.random(grid, rng)
    A1 = MatrixParam.scalar(0.5, ctx.d)
    A2 = MatrixParam.scalar(-0.2, ctx.d)
    a2 = symbol_transfer(a, A1 - A2)
    worst = 0.0
    for p in (1.0, 2.0, math.inf):
        v1 = symbol_schatten_norm(a, A1, p)
        v2 = symbol_schatten_norm(a2, A2, p)
        worst = max(worst, _rel(abs(v1 - v2), v1))
    return worst


@check("svd_eigen_consistency", "schatten",
       "singular values == sqrt of eigenvalues of T*T, nonincreasing", 1e-12)
def _s_svd_eigen(ctx):
    rng = ctx.rng("svd_eigen_consistency")
    T = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    sv = singular_values(T).values
    ev = np.sqrt(np.maximum(np.linalg.eigvalsh(T.conj().T @ T)[::-1], 0.0))
    if np.any(np.diff(sv) > 0):
        return math.inf
    return _rel(float(np.abs(sv - ev).max()), float(sv[0]))


@check("trace_pairing_entrywise", "schatten",
       "Tr(T2^* T1) == entrywise sum T1 conj(T2)", 1e-12)
def _s_trace_pairing(ctx):
    rng = ctx.rng("trace_pairing_entrywise")
    T1 = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
    T2 = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
    lhs = trace_pairing(T1, T2)
    rhs = np.trace(T2.conj().T @ T1)
    return _rel(abs(lhs - rhs), abs(rhs))


@check("schatten_duality", "schatten",
       "||T||_{I_p} == sup over the I_{p'} unit ball of |(T, T0)_{I_2}|", 1e-10)
def _s_duality(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("schatten_duality")
    worst = 0.0
    for p in (1.0, 1.5, 2.0, 3.0, math.inf):
        for m in (6, grid.size):
            T = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
            _, _, ratio = duality_check(T, p)
            worst = max(worst, abs(ratio - 1.0))
    return worst


@check("hoelder_composition", "schatten",
       "||T2 T1||_{I_r} <= ||T1||_{I_{p1}} ||T2||_{I_{p2}}, 1/r = 1/p1 + 1/p2", 1e-10)
def _s_hoelder(ctx):
    rng = ctx.rng("hoelder_composition")
    worst = 0.0
    for p1, p2 in ((1.0, math.inf), (2.0, 2.0), (4.0, 4.0 / 3.0)):
        for _ in range(34):
            T1 = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
            T2 = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
            lhs, rhs = hoelder_check(T1, T2, p1, p2)
            worst = max(worst, max(0.0, (lhs - rhs) / rhs))
    return worst


@check("schatten_unitary_invariance", "schatten",
       "conjugating by the DFT matrix preserves Schatten norms", 1e-11)
def _s_unitary_invariance(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("schatten_unitary_invariance")
    N = grid.size
    # DFT matrix of the flattened grid group Z_n^d
    coords = index_coords(grid)
    F = np.exp(-2j * np.pi * ((coords @ coords.T) % grid.n) / grid.n) / math.sqrt(N)
    T = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    worst = 0.0
    for p in (1.0, 2.0, math.inf):
        worst = max(worst, _rel(abs(schatten_norm(F @ T @ F.conj().T, p) - schatten_norm(T, p)),
                                schatten_norm(T, p)))
    return worst


@check("schatten_embedding_ratios", "schatten",
       "M^{1,1} >= s_{A,2} >= (scaled) M^{inf,inf} ordering; reports worst ratios", None)
def _s_embedding_ratios(ctx):
    grid = ctx.grid("real")
    if grid.size**4 > FOURD_LIMIT:
        raise SkipCheck("dense 4d array exceeds cap at this grid")
    rng = ctx.rng("schatten_embedding_ratios")
    A = MatrixParam.weyl(ctx.d)
    draws = 20 if ctx.n <= 17 else 5
    lo = MixedNormParams(1, 1)
    hi = MixedNormParams(math.inf, math.inf)
    worst_up = worst_dn = 0.0
    for _ in range(draws):
        a = _unit_symbol(grid, rng)
        s2 = symbol_schatten_norm(a, A, 2)
        worst_up = max(worst_up, s2 / ms.symbol_modulation_norm(a, lo))
        worst_dn = max(worst_dn, ms.symbol_modulation_norm(a, hi) / s2)
    return max(worst_up, worst_dn)


# ---------------------------------------------------------------------------
# schemes suite


@check("bj_quadrature_vs_multiplier", "schemes",
       "Gauss-Legendre average of Op_t over [0,1] == sinc-multiplier closed form", 1e-12)
def _q_bj(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("bj_quadrature_vs_multiplier")
    spec = SchemeSpec("born_jordan")
    # the transfer phase reaches theta_max = 2 pi d ((n-1)/2)^2 / n; 20 nodes
    # resolve it to 1e-12 only for theta_max <~ 30, so scale the node count
    theta_max = 2.0 * np.pi * ctx.d * ((ctx.n - 1) // 2) ** 2 / ctx.n
    nodes = max(20, int(math.ceil(theta_max / 2.0)) + 10)
    worst = 0.0
    for _ in range(10):
        a = _unit_symbol(grid, rng)
        closed = quantize_scheme(a, spec).data
        quad = born_jordan_quadrature(a, nodes=nodes).data
        worst = max(worst, float(np.abs(closed - quad).max()))
    return worst


@check("t_half_equals_weyl", "schemes", "the t-scheme at t = 1/2 is the Weyl scheme", 0.0)
def _q_t_half(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("t_half_equals_weyl")
    a = Symbol.random(grid, rng)
    lhs = quantize_scheme(a, SchemeSpec("t", {"t": 0.5})).data
    rhs = quantize_scheme(a, SchemeSpec("weyl")).data
    return float(np.abs(lhs - rhs).max())


@check("un_avg_r0_equals_weyl", "schemes", "orthogonal average at r = 0 is exactly Weyl", 0.0)
def _q_un_r0(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("un_avg_r0_equals_weyl")
    a = Symbol.random(grid, rng)
    lhs = quantize_scheme(a, SchemeSpec("un_avg", {"r": 0.0})).data
    rhs = quantize(a, MatrixParam.weyl(ctx.d)).data
    return float(np.abs(lhs - rhs).max())


@check("un_avg_multiplier_route", "schemes",
       "Haar-averaged quantization == Weyl quantization of the averaged-phase multiplier", 1e-11)
def _q_un_multiplier(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("un_avg_multiplier_route")
    worst = 0.0
    for r in (0.0, 0.5, 1.0):
        a = _unit_symbol(grid, rng)
        direct = quantize_scheme(a, SchemeSpec("un_avg", {"r": r})).data
        mult = sch.un_avg_multiplier_grid(grid, r)
        ahat = _full_dft2(a.data, grid)
        smoothed = Symbol(grid, _full_dft2(ahat * mult, grid, inverse=True))
        routed = quantize(smoothed, MatrixParam.weyl(ctx.d)).data
        worst = max(worst, float(np.abs(direct - routed).max()))
    return worst


@check("un_avg_linearity", "schemes", "the averaged scheme is linear in the symbol", 1e-12)
def _q_un_linear(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("un_avg_linearity")
    spec = SchemeSpec("un_avg", {"r": 0.7, "angle_nodes": 16})
    a, b = _unit_symbol(grid, rng), _unit_symbol(grid, rng)
    alpha, beta = 1.3 - 0.2j, -0.4 + 2.1j
    comb = Symbol(grid, alpha * a.data + beta * b.data)
    lhs = quantize_scheme(comb, spec).data
    rhs = alpha * quantize_scheme(a, spec).data + beta * quantize_scheme(b, spec).data
    return float(np.abs(lhs - rhs).max())


@check("scheme_hermiticity", "schemes",
       "real symbols map to Hermitian operators under every symmetric scheme", 1e-11)
def _q_hermitian(ctx):
    grid = ctx.grid("real")
    rng = ctx.rng("scheme_hermiticity")
    a = Symbol(grid, rng.standard_normal((grid.size, grid.size)).astype(complex))
    worst = 0.0
    for spec in (SchemeSpec("weyl"), SchemeSpec("born_jordan"),
                 SchemeSpec("un_avg", {"r": 0.5, "angle_nodes": 16}),
                 SchemeSpec("un_avg_time", {"r": 0.5, "t_nodes": 8, "angle_nodes": 16})):
        K = quantize_scheme(a, spec).data
        worst = max(worst, _rel(np.linalg.norm(K - K.conj().T), np.linalg.norm(K)))
    return worst


@check("psi1_cosh", "schemes", "psi_1 == cosh on [0, 5]", 1e-14)
def _q_psi1(ctx):
    rhos = np.linspace(0.0, 5.0, 41)
    return max(abs(sch.psi(1, r) - math.cosh(r)) / math.cosh(r) for r in rhos)


@check("psi01_sinh", "schemes", "psi_{0,1} == sinh on [0, 5]", 1e-14)
def _q_psi01(ctx):
    rhos = np.linspace(0.0, 5.0, 41)
    return max(abs(sch.psi0(1, r) - math.sinh(r)) / math.cosh(r) for r in rhos)


@check("psi0_d2_quadrature", "schemes",
       "termwise-integrated psi_{0,2} == Gauss-Legendre quadrature of psi_2", 1e-12)
def _q_psi0_quad(ctx):
    worst = 0.0
    for r in (0.5, 1.0, 3.0):
        t, w = np.polynomial.legendre.leggauss(40)
        tt = 0.5 * r * (t + 1.0)
        quad = 0.5 * r * float(np.sum(w * np.array([sch.psi(2, x) for x in tt])))
        worst = max(worst, abs(sch.psi0(2, r) - quad) / max(1.0, abs(quad)))
    return worst


@check("psi0_small_r_limit", "schemes", "psi_{0,d}(r)/r -> psi_d(0) as r -> 0+", 1e-9)
def _q_psi0_limit(ctx):
    r = 1e-6
    worst = 0.0
    for d in (1, 2, 3, 4):
        worst = max(worst, abs(sch.psi0(d, r) / r - sch.psi(d, 0.0)))
    return worst


@check("psi2_sphere_average", "schemes",
       "psi_2 series vs circle-average Monte Carlo: the ratio is rho-independent", 1e-3)
def _q_psi2_sphere(ctx):
    ratios = []
    for i, rho in enumerate((0.5, 1.0, 2.0)):
        mc = sch.sphere_average_exp(rho, samples=10**6, seed=ctx.seed + i)
        ratios.append(mc / sch.psi(2, rho))
    dev = max(abs(r - ratios[0]) for r in ratios)
    return dev


@check("un_multiplier_alternating_series", "schemes",
       "direct Haar phase average == psi series on the imaginary axis", 1e-10)
def _q_un_alt_series(ctx):
    worst = 0.0
    for r in (0.3, 1.0, 2.5):
        for m, c in ((1.0, 1.0), (2.0, 0.7)):
            v1 = sch.un_avg_multiplier(1, r, [m], [c])
            worst = max(worst, abs(v1 - sch.psi_alternating(1, r * m * c)))
            v2 = sch.un_avg_multiplier(2, r, [m, 0.0], [0.0, c], angle_nodes=128)
            worst = max(worst, abs(v2 - sch.psi_alternating(2, r * m * c)))
    return worst


@check("un_multiplier_monte_carlo", "schemes",
       "O(2) multiplier: 64-node angle quadrature vs stratified Monte Carlo", 1e-3)
def _q_un_mc(ctx):
    rng = ctx.rng("un_multiplier_monte_carlo")
    samples = 10**5
    worst = 0.0
    for r, m, c in ((0.8, [1.0, 0.5], [0.25, 1.0]), (1.5, [2.0, 0.0], [0.0, 1.2])):
        quad = sch.un_avg_multiplier(2, r, m, c, angle_nodes=64)
        angles = 2.0 * np.pi * (np.arange(samples) + rng.random(samples)) / samples
        rot = np.exp(1j * r * ((np.cos(angles) * m[0] - np.sin(angles) * m[1]) * c[0]
                               + (np.sin(angles) * m[0] + np.cos(angles) * m[1]) * c[1]))
        ref = np.exp(1j * r * ((np.cos(angles) * m[0] + np.sin(angles) * m[1]) * c[0]
                               + (np.sin(angles) * m[0] - np.cos(angles) * m[1]) * c[1]))
        mc = 0.5 * (rot.mean() + ref.mean())
        worst = max(worst, abs(quad - mc))
    return worst


# ---------------------------------------------------------------------------
# runner


def _run_check(cd: CheckDef, ctx: Context) -> dict:
    entry = {
        "name": cd.name,
        "suite": cd.suite,
        "identity": cd.identity,
        "measure": None,
        "tolerance": cd.tolerance,
        "passed": True,
        "skipped": False,
        "note": None,
    }
    try:
        measure = cd.fn(ctx)
    except SkipCheck as exc:
        entry["skipped"] = True
        entry["note"] = str(exc)
        return entry
    entry["measure"] = float(measure)
    if cd.tolerance is not None:
        entry["passed"] = bool(measure <= cd.tolerance)
    else:
        entry["note"] = "report-only"
    return entry


def run_suite(suite: str, n: int, d: int, seed: int, threads: int = None) -> dict:
    """Run one suite (or 'all'); returns the report dict."""
    if suite not in SUITES:
        raise InvalidParams(f"unknown suite {suite!r}; have {SUITES}")
    if d not in (1, 2):
        raise InvalidParams(f"d must be 1 or 2, got {d}")
    GridSpec(d, n)  # validates n odd
    ctx = Context(n, d, seed)
    selected = [c for c in CHECKS if suite == "all" or c.suite == suite]
    if threads is None:
        threads = int(os.environ.get("PSDO_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: _run_check(c, ctx), selected))
    else:
        results = [_run_check(c, ctx) for c in selected]
    report = {
        "suite": suite,
        "n": n,
        "d": d,
        "seed": seed,
        "checks": results,
        "passed": all(r["passed"] for r in results),
    }
    return report


def _fmt(x) -> str:
    if x is None:
        return "-"
    return f"{x:.3e}"


def format_table(report: dict) -> str:
    lines = [
        f"verify suite={report['suite']} n={report['n']} d={report['d']} seed={report['seed']}",
        f"{'check':34} {'suite':9} {'measure':>10} {'tol':>10}  status",
    ]
    for r in report["checks"]:
        status = "SKIP" if r["skipped"] else ("pass" if r["passed"] else "FAIL")
        if r["tolerance"] is None and not r["skipped"]:
            status = "report"
        lines.append(f"{r['name']:34} {r['suite']:9} {_fmt(r['measure']):>10} "
                     f"{_fmt(r['tolerance']):>10}  {status}")
    tally = sum(1 for r in report["checks"] if r["passed"])
    lines.append(f"{tally}/{len(report['checks'])} checks passed")
    return "\n".join(lines)


def report_to_json(report: dict) -> bytes:
    return (json.dumps(report, indent=2) + "\n").encode("utf-8")
