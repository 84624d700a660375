"""Greedy approximation guarantees and per-objective parameter bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .errors import ArgumentError, DegenerateInstanceError, ScaleError
from .lp import PolytopeSpec
from .objectives import AOptConfig, DetConfig, LPAuxiliary, R2Config
from .subsets import FULL_ENUM_CAP, ZERO_TOL, value_table

ALPHA_EPS = 1e-12


def _check(alpha: float, gamma: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ArgumentError(f"alpha must lie in [0, 1], got {alpha}")
    if not 0.0 <= gamma <= 1.0:
        raise ArgumentError(f"gamma must lie in [0, 1], got {gamma}")


def bound_const(alpha: float, gamma: float) -> float:
    """``(1 - exp(-alpha gamma)) / alpha``, equal to ``gamma`` at ``alpha = 0``."""
    _check(alpha, gamma)
    if alpha < ALPHA_EPS:
        return gamma
    return -math.expm1(-alpha * gamma) / alpha


def bound_K(alpha: float, gamma: float, K: int) -> float:
    """``(1 - (1 - alpha gamma / K)^K) / alpha`` for a budget of ``K``.

    As ``alpha -> 0`` the expansion ``1 - (1 - x/K)^K = x + O(x^2)`` gives the
    limit ``gamma``, which is returned below ``ALPHA_EPS``.
    """
    _check(alpha, gamma)
    if K < 1:
        raise ArgumentError(f"K must be at least 1, got {K}")
    if alpha < ALPHA_EPS:
        return gamma
    if alpha * gamma >= K:
        # only at K = alpha = gamma = 1, where q = 0
        return 1.0 / alpha
    # 1 - q^K computed as -expm1(K log1p(-ag/K)) to avoid cancellation at small alpha
    return -math.expm1(K * math.log1p(-alpha * gamma / K)) / alpha


def bound_extended(alpha: float, gamma: float, K: int, Kprime: int) -> float:
    """Guarantee against a ``K``-optimum when greedy runs for ``Kprime >= K`` steps.

    Deliberately not capped at one.
    """
    _check(alpha, gamma)
    if not 1 <= K <= Kprime:
        raise ArgumentError(f"need 1 <= K <= Kprime, got K={K}, Kprime={Kprime}")
    if alpha < ALPHA_EPS:
        return gamma * Kprime / K
    return -math.expm1(-alpha * gamma * Kprime / K) / alpha


@dataclass
class BoundReport:
    bound_const: float
    bound_K: float
    realized_ratio: Optional[float]
    alpha: float
    gamma: float
    source: str
    theory_param_bounds: Optional[tuple] = None
    passed: Optional[bool] = None
    greedy_value: Optional[float] = None
    opt_value: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "bound_const": self.bound_const,
            "bound_K": self.bound_K,
            "realized_ratio": self.realized_ratio,
            "params_used": {"alpha": self.alpha, "gamma": self.gamma, "source": self.source},
            "theory_param_bounds": self.theory_param_bounds,
            "passed": self.passed,
            "greedy_value": self.greedy_value,
            "opt_value": self.opt_value,
        }


def aopt_param_bounds(cfg: AOptConfig) -> tuple[float, float]:
    """``(gamma_lower, alpha_upper)`` from the spectral norm of the stimuli."""
    s2 = linalg.spectral_norm(cfg.X) ** 2
    b2 = cfg.beta ** 2
    g = b2 / (s2 * (b2 + s2 / cfg.sigma ** 2))
    return g, 1.0 - g


def det_gamma_bound(cfg: DetConfig, K: int) -> float:
    """``K (lam_n - 1) / (prod_{j<=K} lam_j - 1)`` for ``A = I + sigma^-2 Sigma``.

    Raises :class:`DegenerateInstanceError` when the smallest eigenvalue of
    ``A`` is 1, where the bound carries no information.
    """
    if not 1 <= K <= cfg.n:
        raise ArgumentError(f"K must be in [1, {cfg.n}]")
    lam = linalg.eigvalsh_desc(np.eye(cfg.n) + cfg.Sigma / cfg.sigma ** 2)
    if lam[-1] <= 1.0 + 1e-12:
        raise DegenerateInstanceError("Sigma is singular; the determinantal gamma bound is vacuous")
    return float(K * (lam[-1] - 1.0) / (np.prod(lam[:K]) - 1.0))


def r2_gamma_bound(cfg: R2Config) -> float:
    return float(linalg.eigvalsh_desc(cfg.C)[-1])


def lp_gamma0(P: PolytopeSpec, cap: int = FULL_ENUM_CAP, override: bool = False) -> float:
    """Smallest positive single-element gain, relative to ``F(V)``."""
    if P.n > cap and not override:
        raise ScaleError(f"n={P.n} exceeds enumeration cap {cap}")
    T = value_table(LPAuxiliary(P), cap=cap, override=override)
    top = T[-1]
    if top <= ZERO_TOL:
        if np.all(T <= ZERO_TOL):
            return 1.0
        raise DegenerateInstanceError("F(V) is zero")
    masks = np.arange(1 << P.n)
    smallest = math.inf
    for e in range(P.n):
        S = masks[(masks >> e) & 1 == 0]
        g = T[S | (1 << e)] - T[S]
        g = g[g > ZERO_TOL]
        if g.size:
            smallest = min(smallest, float(g.min()))
    if smallest is math.inf:
        return 1.0
    return smallest / top
