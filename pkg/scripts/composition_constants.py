#!/usr/bin/env python3
"""Empirical composition-norm constants for the N-fold sharp product.

Evaluates the exponent and weight hypotheses for a few tuples and, where
they hold, estimates max/median of

    ||a_1 # ... # a_N||_{M^{p0',q0'}_{(1/w0)}} / prod_j ||a_j||_{M^{pj,qj}_{(wj)}}

over random draws.  Emits one JSON report per configuration.
"""

import argparse
import json
import sys

from psdo import GridSpec
from psdo.calculus import alg_hypotheses_report
from psdo.modspace import ExponentTuple, make_weight, trivial_weight, SYMBOL_AXES


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=9)
    ap.add_argument("--draws", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    grid = GridSpec(1, args.n)
    ones = trivial_weight(SYMBOL_AXES)
    decaying = make_weight("polynomial", axes=SYMBOL_AXES, s=-1.0)
    growing = make_weight("polynomial", axes=SYMBOL_AXES, s=2.0)
    configs = [
        ("two-factor, all exponents 2, trivial weights",
         ExponentTuple(p=(2, 2, 2), q=(2, 2, 2)), (ones, ones, ones), 0.5),
        ("three-factor, all exponents 2, trivial weights",
         ExponentTuple(p=(2, 2, 2, 2), q=(2, 2, 2, 2)), (ones,) * 4, 0.5),
        ("two-factor, polynomial weights",
         ExponentTuple(p=(2, 2, 2), q=(2, 2, 2)), (growing, decaying, decaying), 0.0),
        ("gated: all-inf q slots",
         ExponentTuple(p=(2, 2, 2), q=("inf", "inf", "inf")), (ones, ones, ones), 0.5),
    ]
    for label, exponents, weights, A in configs:
        rep = alg_hypotheses_report(exponents, list(weights), A, grid,
                                    draws=args.draws, seed=args.seed)
        print(json.dumps({"config": label, **rep.to_json()}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
