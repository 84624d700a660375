"""Exact submodularity ratio and curvature certificates at desk scale.

The full parameters quantify over every pair of subsets and are computed
from the table of all ``2**n`` function values.  Two reductions keep this
cheap without changing the result:

* the ratio for ``(Omega, S)`` depends on ``Omega`` only through
  ``Omega \\ S``, so only ``Omega`` disjoint from ``S`` is scanned
  (``3**n`` pairs instead of ``4**n``);
* for the curvature, ``S \\ {i} | Omega`` ranges over every superset of
  ``S \\ {i}`` avoiding ``i``, so the worst case is a superset-minimum
  computed by a subset-sum style sweep.

Constraints whose denominator is at most ``1e-9`` are vacuous; they are
skipped and counted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ArgumentError, ScaleError
from .greedy import GreedyTrace
from .subsets import (
    FULL_ENUM_CAP,
    ZERO_TOL,
    SetFunction,
    bit_matrix,
    enumerate_k_subsets,
    memoize,
    popcount,
    value_table,
)

GREEDY_ENUM_LIMIT = 10**7
STEP_TOL = 1e-7


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


@dataclass
class Certificate:
    """Value of one parameter plus the bookkeeping behind it."""

    value: float
    skipped: int = 0
    witness: Optional[tuple] = None


@dataclass
class CertificateReport:
    K: int
    gamma_greedy: float
    alpha_greedy: float
    alpha_total: Optional[float]
    gamma_full: Optional[float] = None
    alpha_full: Optional[float] = None
    skipped_pairs: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "K": self.K,
            "gamma_full": self.gamma_full,
            "gamma_greedy": self.gamma_greedy,
            "alpha_full": self.alpha_full,
            "alpha_greedy": self.alpha_greedy,
            "alpha_total": self.alpha_total,
            "skipped_pairs": dict(self.skipped_pairs),
        }


def _table(F, table, cap, override):
    if table is not None:
        return np.asarray(table, dtype=float)
    return value_table(F, cap=cap, override=override)


def gamma_full_detail(F: SetFunction, cap: int = FULL_ENUM_CAP, override: bool = False,
                      table=None, tol: float = ZERO_TOL) -> Certificate:
    n = F.n
    T = _table(F, table, cap, override)
    size = 1 << n
    masks = np.arange(size)
    bits = bit_matrix(n).astype(float)
    best = math.inf
    witness = None
    skipped = 0
    for S in range(size):
        free = masks[(masks & S) == 0]
        gains = np.zeros(n)
        for e in range(n):
            if not S >> e & 1:
                gains[e] = T[S | (1 << e)] - T[S]
        den = T[S | free] - T[S]
        num = bits[free] @ gains
        live = den > tol
        # each disjoint Omega' stands for 2^|S| choices of Omega
        skipped += int(np.count_nonzero(~live)) << popcount(S)
        if not live.any():
            continue
        ratios = num[live] / den[live]
        k = int(np.argmin(ratios))
        if ratios[k] < best:
            best = float(ratios[k])
            witness = (int(free[live][k]), S)
    value = 1.0 if witness is None else _clamp(best)
    return Certificate(value, skipped, witness)


def gamma_full(F: SetFunction, **kw) -> float:
    """Largest ``gamma`` with ``sum_w rho_w(S) >= gamma rho_Omega(S)`` for all pairs."""
    return gamma_full_detail(F, **kw).value


def _superset_min(vals: np.ndarray, n: int) -> np.ndarray:
    out = vals.copy()
    masks = np.arange(1 << n)
    for b in range(n):
        lo = masks[(masks >> b) & 1 == 0]
        out[lo] = np.minimum(out[lo], out[lo | (1 << b)])
    return out


def alpha_full_detail(F: SetFunction, cap: int = FULL_ENUM_CAP, override: bool = False,
                      table=None, tol: float = ZERO_TOL) -> Certificate:
    n = F.n
    T = _table(F, table, cap, override)
    masks = np.arange(1 << n)
    best = -math.inf
    witness = None
    skipped = 0
    for i in range(n):
        bit = 1 << i
        without = masks[(masks & bit) == 0]
        gain = np.full(1 << n, np.inf)
        gain[without] = T[without | bit] - T[without]
        worst = _superset_min(gain, n)
        base = gain[without]
        live = base > tol
        skipped += int(np.count_nonzero(~live)) << (n - 1)
        if not live.any():
            continue
        vals = 1.0 - worst[without][live] / base[live]
        k = int(np.argmax(vals))
        if vals[k] > best:
            best = float(vals[k])
            witness = (i, int(without[live][k]))
    value = 0.0 if witness is None else _clamp(best)
    return Certificate(value, skipped, witness)


def alpha_full(F: SetFunction, **kw) -> float:
    """Smallest ``alpha`` with ``rho_i(S - i + Omega) >= (1 - alpha) rho_i(S - i)``."""
    return alpha_full_detail(F, **kw).value


def _check_trace(F, trace: GreedyTrace, K: int):
    if trace.K != K:
        raise ArgumentError(f"trace has {trace.K} steps but K={K}")
    if not 1 <= K <= F.n:
        raise ArgumentError(f"K must be in [1, {F.n}]")
    if math.comb(F.n, K) * K > GREEDY_ENUM_LIMIT:
        raise ScaleError(f"C({F.n},{K}) * {K} evaluations exceed limit {GREEDY_ENUM_LIMIT}")


def gamma_greedy_detail(F: SetFunction, trace: GreedyTrace, K: int, tol: float = ZERO_TOL) -> Certificate:
    _check_trace(F, trace, K)
    F = memoize(F)
    n = F.n
    omegas = np.array(enumerate_k_subsets(n, K), dtype=np.int64)
    obits = ((omegas[:, None] >> np.arange(n)) & 1).astype(float)
    best = math.inf
    witness = None
    skipped = 0
    for t in range(K):
        S = trace.chain[t]
        FS = F(S)
        gains = np.array([0.0 if S >> e & 1 else F(S | (1 << e)) - FS for e in range(n)])
        num = obits @ gains
        den = np.array([F(int(o) | S) for o in omegas]) - FS
        live = den > tol
        skipped += int(np.count_nonzero(~live))
        if not live.any():
            continue
        ratios = num[live] / den[live]
        k = int(np.argmin(ratios))
        if ratios[k] < best:
            best = float(ratios[k])
            witness = (int(omegas[live][k]), t)
    value = 1.0 if witness is None else _clamp(best)
    return Certificate(value, skipped, witness)


def gamma_greedy(F: SetFunction, trace: GreedyTrace, K: int) -> float:
    """Submodularity ratio restricted to greedy prefixes and ``|Omega| = K``."""
    return gamma_greedy_detail(F, trace, K).value


def alpha_greedy_detail(F: SetFunction, trace: GreedyTrace, K: int, tol: float = ZERO_TOL) -> Certificate:
    _check_trace(F, trace, K)
    n = F.n
    if K == 1 or K == n:
        return Certificate(0.0)
    F = memoize(F)
    best = -math.inf
    witness = None
    skipped = 0
    for omega in enumerate_k_subsets(n, K):
        for i in range(1, K):
            j = trace.chosen[i - 1]
            if omega >> j & 1:
                continue
            base = trace.gains[i - 1]
            if base <= tol:
                skipped += 1
                continue
            prev = trace.chain[i - 1] | omega
            val = 1.0 - (F(prev | (1 << j)) - F(prev)) / base
            if val > best:
                best = val
                witness = (omega, i)
    value = 0.0 if witness is None else _clamp(best)
    return Certificate(value, skipped, witness)


def alpha_greedy(F: SetFunction, trace: GreedyTrace, K: int) -> float:
    """Curvature restricted to greedy picks ``j_1..j_{K-1}`` against ``K``-sets."""
    return alpha_greedy_detail(F, trace, K).value


def alpha_total(F: SetFunction, tol: float = ZERO_TOL) -> Optional[float]:
    """Classical total curvature; ``None`` when no singleton has positive value."""
    full = F.ground.full
    Ffull = F(full)
    worst = math.inf
    for i in range(F.n):
        bit = 1 << i
        base = F(bit)
        if base <= tol:
            continue
        worst = min(worst, (Ffull - F(full & ~bit)) / base)
    if worst is math.inf:
        return None
    return _clamp(1.0 - worst)


def _pairwise_excess(F, cap, override, table):
    """Yield ``F(S+i) + F(S+j) - F(S+i+j) - F(S)`` blocks for every ``i < j``."""
    n = F.n
    T = _table(F, table, cap, override)
    masks = np.arange(1 << n)
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = 1 << i, 1 << j
            S = masks[(masks & (bi | bj)) == 0]
            yield T[S | bi] + T[S | bj] - T[S | bi | bj] - T[S]


def is_submodular(F: SetFunction, tol: float = ZERO_TOL, cap: int = FULL_ENUM_CAP,
                  override: bool = False, table=None) -> bool:
    return all(np.all(ex >= -tol) for ex in _pairwise_excess(F, cap, override, table))


def is_supermodular(F: SetFunction, tol: float = ZERO_TOL, cap: int = FULL_ENUM_CAP,
                    override: bool = False, table=None) -> bool:
    return all(np.all(ex <= tol) for ex in _pairwise_excess(F, cap, override, table))


def step_inequality_slack(F: SetFunction, trace: GreedyTrace, omega: int, t: int, alpha: float, gamma: float) -> float:
    """Left side minus right side of the per-step greedy inequality."""
    K = trace.K
    if popcount(omega) != K:
        raise ArgumentError(f"|Omega| must equal K={K}")
    if not 0 <= t <= K - 1:
        raise ArgumentError(f"t must be in [0, {K - 1}]")
    if gamma <= 0:
        raise ArgumentError("gamma must be positive")
    outside = inside = 0.0
    w = 0
    for i in range(t):
        if omega >> trace.chosen[i] & 1:
            inside += trace.gains[i]
            w += 1
        else:
            outside += trace.gains[i]
    lhs = alpha * outside + inside + (K - w) * trace.gains[t] / gamma
    return lhs - F(omega)


def check_step_inequality(F: SetFunction, trace: GreedyTrace, omega: int, t: int, alpha: float, gamma: float,
                 tol: float = STEP_TOL) -> bool:
    return step_inequality_slack(F, trace, omega, t, alpha, gamma) >= -tol


def check_step_inequality_all(F: SetFunction, trace: GreedyTrace, alpha: float, gamma: float) -> bool:
    F = memoize(F)
    K = trace.K
    return all(
        check_step_inequality(F, trace, omega, t, alpha, gamma)
        for omega in enumerate_k_subsets(F.n, K)
        for t in range(K)
    )


def certify(F: SetFunction, trace: GreedyTrace, K: int, full: bool = True,
            cap: int = FULL_ENUM_CAP, override: bool = False) -> CertificateReport:
    """Greedy certificates, plus the full ones when ``full`` is set."""
    F = memoize(F)
    gg = gamma_greedy_detail(F, trace, K)
    ag = alpha_greedy_detail(F, trace, K)
    report = CertificateReport(K=K, gamma_greedy=gg.value, alpha_greedy=ag.value, alpha_total=alpha_total(F))
    report.skipped_pairs = {"gamma_greedy": gg.skipped, "alpha_greedy": ag.skipped}
    if full:
        table = value_table(F, cap=cap, override=override)
        gf = gamma_full_detail(F, table=table)
        af = alpha_full_detail(F, table=table)
        report.gamma_full, report.alpha_full = gf.value, af.value
        report.skipped_pairs.update(gamma_full=gf.skipped, alpha_full=af.skipped)
    return report
