"""Brute-force optimum and end-to-end guarantee verification."""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import bounds
from .certificates import certify
from .errors import ArgumentError, DegenerateInstanceError, ScaleError
from .greedy import GreedyTrace, run_greedy
from .subsets import FULL_ENUM_CAP, ZERO_TOL, SetFunction, enumerate_k_subsets, memoize

OPT_EVAL_LIMIT = 10**7
GUARANTEE_TOL = 1e-7


@dataclass
class OptResult:
    best_set: int
    best_value: float
    evaluations: int


def brute_force_opt(F: SetFunction, K: int, limit: int = OPT_EVAL_LIMIT) -> OptResult:
    """Exact maximizer over all sets of size at most ``K``; ties go to the lowest mask."""
    n = F.n
    if not 0 <= K <= n:
        raise ArgumentError(f"K must be in [0, {n}]")
    count = sum(math.comb(n, k) for k in range(K + 1))
    if count > limit:
        raise ScaleError(f"{count} candidate sets exceed evaluation limit {limit}")
    candidates = sorted(m for k in range(K + 1) for m in enumerate_k_subsets(n, k))
    best_set, best_value = 0, -math.inf
    for m in candidates:
        v = F(m)
        if v > best_value:
            best_set, best_value = m, v
    return OptResult(best_set, best_value, count)


def approx_ratio(F: SetFunction, trace: GreedyTrace, K: int, opt: OptResult = None) -> float:
    opt = opt or brute_force_opt(F, K)
    if opt.best_value <= ZERO_TOL:
        raise DegenerateInstanceError("optimum is zero; every algorithm is trivially optimal")
    return F(trace.final_set) / opt.best_value


def verify_guarantee(F: SetFunction, K: int, param_source: str = "greedy",
                     trace: GreedyTrace = None, cap: int = FULL_ENUM_CAP) -> bounds.BoundReport:
    """Run greedy, measure certificates, and compare the realized ratio with the bound.

    ``passed`` is ``False`` when the realized ratio falls below the bound by
    more than ``1e-7``; a zero optimum passes trivially with ratio ``None``.
    """
    if param_source not in ("full", "greedy"):
        raise ArgumentError("param_source must be 'full' or 'greedy'")
    F = memoize(F)
    trace = trace or run_greedy(F, K)
    cert = certify(F, trace, K, full=param_source == "full", cap=cap)
    if param_source == "full":
        alpha, gamma = cert.alpha_full, cert.gamma_full
    else:
        alpha, gamma = cert.alpha_greedy, cert.gamma_greedy
    report = bounds.BoundReport(
        bound_const=bounds.bound_const(alpha, gamma),
        bound_K=bounds.bound_K(alpha, gamma, K),
        realized_ratio=None,
        alpha=alpha,
        gamma=gamma,
        source=param_source,
    )
    opt = brute_force_opt(F, K)
    report.greedy_value = trace.final_value
    report.opt_value = opt.best_value
    if opt.best_value <= ZERO_TOL:
        report.passed = True
        return report
    report.realized_ratio = trace.final_value / opt.best_value
    report.passed = trace.final_value >= report.bound_K * opt.best_value - GUARANTEE_TOL
    return report
