"""Sharp product, N-fold composition, and cross-calculus transfer of
products.

The product is computed operationally (quantize, multiply, dequantize),
which is exact in finite dimensions; the quantization-homomorphism
property Op_A(a # b) = Op_A(a) Op_A(b) holds by construction and is
cross-checked elsewhere through the independent kernel route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArityMismatch
from .grid import GridSpec, Symbol, OperatorMatrix
from .quantizer import as_matrix_param, quantize, dequantize, symbol_transfer
from .modspace import (
    ExponentTuple,
    MixedNormParams,
    conjugate_exponent,
    exponent_to_float,
    holds_composition_exponents,
    holds_composition_exponents_l2,
    holds_composition_weight_bound,
    symbol_modulation_norm,
)

__all__ = [
    "SharpProductRequest",
    "CompositionReport",
    "sharp",
    "sharp_n",
    "sharp_transfer_check",
    "alg_hypotheses_report",
]


@dataclass(frozen=True)
class SharpProductRequest:
    """N >= 2 factors sharing one grid, a calculus parameter, and an
    optional transfer target."""

    factors: tuple
    A: object
    B: object = None

    def __post_init__(self):
        if len(self.factors) < 2:
            raise ArityMismatch("need at least two factors")
        g = self.factors[0].grid
        for f in self.factors[1:]:
            if f.grid != g:
                raise ArityMismatch("factors must share one grid")


def sharp(a: Symbol, b: Symbol, A) -> Symbol:
    """Symbol product a #_A b with Op_A(a #_A b) = Op_A(a) Op_A(b)."""
    Ta = quantize(a, A)
    Tb = quantize(b, A)
    return dequantize(OperatorMatrix(a.grid, Ta.data @ Tb.data), A)


def sharp_n(factors, A) -> Symbol:
    """Left fold of :func:`sharp`; associative up to fp roundoff."""
    if len(factors) < 2:
        raise ArityMismatch("need at least two factors")
    grid = factors[0].grid
    prod = quantize(factors[0], A).data
    for f in factors[1:]:
        prod = prod @ quantize(f, A).data
    return dequantize(OperatorMatrix(grid, prod), A)


def sharp_transfer_check(a: Symbol, b: Symbol, A, B) -> float:
    """Max deviation of the cross-calculus product transfer

        a #_A b = T_{A-B}^{-1}((T_{A-B} a) #_B (T_{A-B} b)).
    """
    d = a.grid.d
    A = as_matrix_param(A, d)
    B = as_matrix_param(B, d)
    lhs = sharp(a, b, A).data
    ta = symbol_transfer(a, A - B)
    tb = symbol_transfer(b, A - B)
    rhs = symbol_transfer(sharp(ta, tb, B), -(A - B)).data
    return float(np.abs(lhs - rhs).max())


@dataclass
class CompositionReport:
    """Structured outcome of a composition-hypothesis evaluation."""

    n_factors: int
    predicates: dict
    weight_constant: float
    estimated: bool
    max_ratio: float = None
    median_ratio: float = None
    draws: int = 0
    seed: int = 0

    def to_json(self) -> dict:
        return {
            "n_factors": self.n_factors,
            "predicates": dict(self.predicates),
            "weight_constant": self.weight_constant,
            "estimated": self.estimated,
            "max_ratio": self.max_ratio,
            "median_ratio": self.median_ratio,
            "draws": self.draws,
            "seed": self.seed,
        }


def alg_hypotheses_report(exponents: ExponentTuple, weights, A, grid: GridSpec,
                          draws: int = 50, seed: int = 0) -> CompositionReport:
    """Evaluate the composition hypotheses and, when they hold, estimate the
    composition-norm constant empirically.

    exponents holds (p_0..p_N, q_0..q_N); weights holds the N+1 symbol-layout
    weights (omega_0, ..., omega_N).  The estimate is the max over `draws`
    random factor tuples of

        ||a_1 # ... # a_N||_{M^{p0', q0'}_{(1/omega_0)}} / prod_j ||a_j||_{M^{pj, qj}_{(omega_j)}}.
    """
    N = len(exponents.p) - 1
    if len(weights) != N + 1:
        raise ArityMismatch(f"need {N + 1} weights for N = {N} factors, got {len(weights)}")
    preds = {
        "composition_exponents": holds_composition_exponents(exponents),
        "composition_exponents_l2": holds_composition_exponents_l2(exponents),
    }
    w_ok, w_const = holds_composition_weight_bound(weights, A, grid, seed=seed)
    preds["weight_bound"] = w_ok
    report = CompositionReport(
        n_factors=N,
        predicates=preds,
        weight_constant=w_const,
        estimated=False,
        draws=draws,
        seed=seed,
    )
    if not ((preds["composition_exponents"] or preds["composition_exponents_l2"]) and w_ok):
        return report

    p0c = exponent_to_float(conjugate_exponent(exponents.p[0]))
    q0c = exponent_to_float(conjugate_exponent(exponents.q[0]))
    out_params = MixedNormParams(p0c, q0c)
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(draws):
        factors = [Symbol.random(grid, rng) for _ in range(N)]
        lhs = symbol_modulation_norm(sharp_n(factors, A), out_params, weights[0].inverse())
        rhs = 1.0
        for j, f in enumerate(factors, start=1):
            params = MixedNormParams(
                exponent_to_float(exponents.p[j]), exponent_to_float(exponents.q[j])
            )
            rhs *= symbol_modulation_norm(f, params, weights[j])
        ratios.append(lhs / rhs)
    report.estimated = True
    report.max_ratio = float(np.max(ratios))
    report.median_ratio = float(np.median(ratios))
    return report
