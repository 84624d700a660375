"""Objective families, each exposed as a normalized :class:`SetFunction`.

* :class:`AOptimality` -- Bayesian A-optimal experimental design.
* :class:`Determinantal` -- ``det(I + sigma^-2 Sigma_S) - 1``.
* :class:`RSquared` -- squared multiple correlation of a regression subset.
* :class:`LPAuxiliary` -- optimum of a packing LP restricted to a support.
* :class:`TightInstance` -- the worst-case family on which greedy meets its
  guarantee with equality.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ArgumentError
from .lp import PolytopeSpec, solve_restricted
from .subsets import SetFunction, elements, popcount

UNIT_TOL = 1e-8


def normalize_columns(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    norms = np.linalg.norm(X, axis=0)
    if np.any(norms == 0):
        raise ArgumentError("cannot normalize a zero column")
    return X / norms


@dataclass
class AOptConfig:
    X: np.ndarray
    beta: float = 1.0
    sigma: float = 1.0

    def __post_init__(self):
        self.X = np.atleast_2d(np.asarray(self.X, dtype=float))
        norms = np.linalg.norm(self.X, axis=0)
        if np.any(np.abs(norms - 1.0) > UNIT_TOL):
            raise ArgumentError("A-optimality stimuli must have unit l2 norm; use normalize_columns")
        if self.beta <= 0 or self.sigma <= 0:
            raise ArgumentError("beta and sigma must be positive")

    @property
    def d(self) -> int:
        return self.X.shape[0]

    @property
    def n(self) -> int:
        return self.X.shape[1]


class AOptimality(SetFunction):
    """Reduction of the posterior covariance trace, prior ``N(0, beta^-2 I)``."""

    def __init__(self, cfg: AOptConfig):
        super().__init__(cfg.n)
        self.cfg = cfg
        self._prior = self.cfg.beta ** 2 * np.eye(cfg.d)
        self._prior_trace = cfg.d / cfg.beta ** 2

    def evaluate(self, mask: int) -> float:
        if mask == 0:
            return 0.0
        XS = self.cfg.X[:, elements(mask)]
        post = self._prior + XS @ XS.T / self.cfg.sigma ** 2
        return self._prior_trace - linalg.trace_of_inverse(post)


def aopt_value(cfg: AOptConfig, S: int) -> float:
    return AOptimality(cfg)(S)


def is_monotone(F: SetFunction, tol: float = 1e-9) -> bool:
    """Exhaustively check ``F(S + w) >= F(S) - tol`` for every ``S`` and ``w``."""
    from .subsets import value_table

    table = value_table(F)
    masks = np.arange(1 << F.n)
    for e in range(F.n):
        without = masks[(masks >> e) & 1 == 0]
        if np.any(table[without | (1 << e)] - table[without] < -tol):
            return False
    return True


def aopt_monotone_check(cfg: AOptConfig) -> bool:
    return is_monotone(AOptimality(cfg))


@dataclass
class DetConfig:
    Sigma: np.ndarray
    sigma: float = 1.0

    def __post_init__(self):
        self.Sigma = np.atleast_2d(np.asarray(self.Sigma, dtype=float))
        if self.Sigma.shape[0] != self.Sigma.shape[1]:
            raise ArgumentError("Sigma must be square")
        if not np.allclose(self.Sigma, self.Sigma.T, rtol=0, atol=1e-10):
            raise ArgumentError("Sigma must be symmetric")
        if self.sigma <= 0:
            raise ArgumentError("sigma must be positive")
        if linalg.eigvalsh_desc(self.Sigma)[-1] < -1e-9:
            raise ArgumentError("Sigma must be positive semidefinite")

    @property
    def n(self) -> int:
        return self.Sigma.shape[0]


class Determinantal(SetFunction):
    """``det(I + sigma^-2 Sigma_S)`` shifted by one so the empty set scores zero."""

    def __init__(self, cfg: DetConfig):
        super().__init__(cfg.n)
        self.cfg = cfg

    def raw(self, mask: int) -> float:
        idx = elements(mask)
        sub = self.cfg.Sigma[np.ix_(idx, idx)]
        return linalg.lu_det(np.eye(len(idx)) + sub / self.cfg.sigma ** 2)

    def evaluate(self, mask: int) -> float:
        if mask == 0:
            return 0.0
        return self.raw(mask) - 1.0


def det_value(cfg: DetConfig, S: int) -> float:
    return Determinantal(cfg)(S)


def se_kernel(points, h: float) -> np.ndarray:
    """Squared-exponential kernel ``exp(-|x_i - x_j|^2 / h^2)``."""
    if h <= 0:
        raise ArgumentError("bandwidth must be positive")
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    sq = np.sum((P[:, None, :] - P[None, :, :]) ** 2, axis=-1)
    return np.exp(-sq / h ** 2)


@dataclass
class R2Config:
    C: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.C = np.atleast_2d(np.asarray(self.C, dtype=float))
        self.b = np.asarray(self.b, dtype=float).reshape(self.C.shape[0])
        if not np.allclose(self.C, self.C.T, rtol=0, atol=1e-10):
            raise ArgumentError("C must be symmetric")

    @property
    def n(self) -> int:
        return self.C.shape[0]

    @classmethod
    def from_data(cls, X, z) -> "R2Config":
        """Correlation form from a design matrix (columns = variables) and target."""
        X = np.asarray(X, dtype=float)
        z = np.asarray(z, dtype=float)
        Xc = X - X.mean(axis=0)
        zc = z - z.mean()
        Xs = Xc / np.linalg.norm(Xc, axis=0)
        zs = zc / np.linalg.norm(zc)
        return cls(Xs.T @ Xs, Xs.T @ zs)


class RSquared(SetFunction):
    """``b_S^T C_S^{-1} b_S``."""

    def __init__(self, cfg: R2Config):
        super().__init__(cfg.n)
        self.cfg = cfg

    def evaluate(self, mask: int) -> float:
        if mask == 0:
            return 0.0
        idx = elements(mask)
        bS = self.cfg.b[idx]
        return float(bS @ linalg.solve(self.cfg.C[np.ix_(idx, idx)], bS))


def r2_value(cfg: R2Config, S: int) -> float:
    return RSquared(cfg)(S)


class LPAuxiliary(SetFunction):
    """Best LP objective when every variable outside the set is pinned to zero."""

    def __init__(self, P: PolytopeSpec):
        super().__init__(P.n)
        self.P = P

    def evaluate(self, mask: int) -> float:
        return solve_restricted(self.P, mask).value


def lp_aux_value(P: PolytopeSpec, S: int) -> float:
    return LPAuxiliary(P)(S)


@dataclass
class TightConfig:
    K: int
    gamma: float
    alpha: float
    n_dummies: int = 0

    def __post_init__(self):
        if self.K < 1:
            raise ArgumentError("K must be at least 1")
        if not 0 < self.gamma <= 1:
            raise ArgumentError(f"gamma must lie in (0, 1], got {self.gamma}")
        if not 0 <= self.alpha <= 1:
            raise ArgumentError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.n_dummies < 0:
            raise ArgumentError("n_dummies must be nonnegative")

    @property
    def n(self) -> int:
        return 2 * self.K + self.n_dummies


def tight_xi(cfg: TightConfig, i: int) -> float:
    """Weight of the ``i``-th greedy element, ``i`` counted from 1."""
    if not 1 <= i <= cfg.K:
        raise ArgumentError(f"step index must be in [1, {cfg.K}]")
    K = cfg.K
    return (1.0 / K) * ((K - cfg.gamma * cfg.alpha) / K) ** (i - 1)


def tight_f(cfg: TightConfig, x: float) -> float:
    """Convex profile with ``f(0) = 0``, ``f(1) = 1`` and ``f(K) = K / gamma``."""
    K, g = cfg.K, cfg.gamma
    if K == 1:
        return x / g
    return (1.0 / g - 1.0) / (K - 1) * x * x + (K - 1.0 / g) / (K - 1) * x


class TightInstance(SetFunction):
    """Worst-case family: elements ``0..K-1`` are the greedy picks ``j_i``,
    ``K..2K-1`` the optimal set, the rest are dummies that never matter."""

    def __init__(self, cfg: TightConfig):
        super().__init__(cfg.n)
        self.cfg = cfg
        K = cfg.K
        self._xi = np.array([tight_xi(cfg, i) for i in range(1, K + 1)])
        self._fvals = np.array([tight_f(cfg, x) for x in range(K + 1)])
        self._jmask = (1 << K) - 1
        self._omask = self._jmask << K

    @property
    def greedy_set(self) -> int:
        return self._jmask

    @property
    def optimal_set(self) -> int:
        return self._omask

    def evaluate(self, mask: int) -> float:
        K = self.cfg.K
        js = mask & self._jmask
        xi_sum = sum(self._xi[i] for i in range(K) if js >> i & 1)
        w = popcount(mask & self._omask)
        return self._fvals[w] / K * (1.0 - self.cfg.alpha * self.cfg.gamma * xi_sum) + xi_sum


def tight_value(cfg: TightConfig, T: int) -> float:
    return TightInstance(cfg)(T)


class Modular(SetFunction):
    """``F(S) = sum of weights in S``."""

    def __init__(self, weights):
        w = np.asarray(weights, dtype=float)
        super().__init__(len(w))
        self.weights = w

    def evaluate(self, mask: int) -> float:
        return float(sum(self.weights[i] for i in elements(mask)))
