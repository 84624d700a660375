"""Seeded instance generators and CSV ingestion."""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .. import linalg
from ..errors import ArgumentError
from ..lp import PolytopeSpec
from ..objectives import R2Config


def rng_for(seed: int, repeat: int = 0) -> np.random.Generator:
    """PCG64 stream for ``(seed, repeat)``.

    The repeat index goes into the seed sequence's spawn key, so each repeat
    owns an independent stream and adding repeats never shifts earlier ones.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(repeat,))))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return rng_for(int(seed))


def equicorrelation(d: int, corr: float) -> np.ndarray:
    return (1.0 - corr) * np.eye(d) + corr * np.ones((d, d))


def gen_gaussian_design(n: int, d: int, corr: float, seed) -> np.ndarray:
    """``d x n`` matrix of equicorrelated Gaussian samples, columns scaled to unit norm."""
    if not 0.0 <= corr < 1.0:
        raise ArgumentError(f"corr must lie in [0, 1), got {corr}")
    if n < 1 or d < 1:
        raise ArgumentError("n and d must be positive")
    rng = _as_rng(seed)
    L = linalg.cholesky(equicorrelation(d, corr))
    X = L @ rng.standard_normal((d, n))
    return X / np.linalg.norm(X, axis=0)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    # sign fix makes Q Haar-distributed
    return Q * np.sign(np.diag(R))


def gen_random_psd(n: int, eig_low: float, eig_high: float, seed) -> np.ndarray:
    if not 0.0 <= eig_low <= eig_high:
        raise ArgumentError("need 0 <= eig_low <= eig_high")
    rng = _as_rng(seed)
    lam = rng.uniform(eig_low, eig_high, size=n)
    Q = random_orthogonal(n, rng)
    M = (Q * lam) @ Q.T
    return 0.5 * (M + M.T)


def gen_random_lp(n: int, m: int, seed, a_scale: float = 1.0) -> PolytopeSpec:
    """Uniform ``[0, a_scale]`` constraint matrix with ``b = d = ubar = 1``."""
    if n < 1 or m < 1:
        raise ArgumentError("n and m must be positive")
    rng = _as_rng(seed)
    A = a_scale * rng.uniform(0.0, 1.0, size=(m, n))
    return PolytopeSpec(A=A, b=np.ones(m), d=np.ones(n), ubar=np.ones(n))


def gen_r2_instance(n: int, m: int, corr: float, seed, noise: float = 1.0) -> R2Config:
    """Regression data: ``m`` equicorrelated observations of ``n`` variables,
    target from uniform ``[0, 1]`` coefficients plus Gaussian noise."""
    rng = _as_rng(seed)
    L = linalg.cholesky(equicorrelation(n, corr))
    X = rng.standard_normal((m, n)) @ L.T
    coef = rng.uniform(0.0, 1.0, size=n)
    z = X @ coef + noise * rng.standard_normal(m)
    return R2Config.from_data(X, z)


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_csv_matrix(path) -> np.ndarray:
    """Read a rectangular numeric CSV; a non-numeric first row is a header."""
    rows = []
    width = None
    with open(Path(path), newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in row]
            if not cells or all(c == "" for c in cells):
                continue
            if lineno == 1 and not all(_is_number(c) for c in cells):
                continue
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise ArgumentError(f"{path}:{lineno}: expected {width} columns, got {len(cells)}")
            try:
                rows.append([float(c) for c in cells])
            except ValueError as exc:
                raise ArgumentError(f"{path}:{lineno}: non-numeric cell ({exc})") from exc
    if not rows:
        raise ArgumentError(f"{path}: no numeric rows")
    return np.array(rows)


def save_csv_matrix(path, M, header=None) -> None:
    with open(Path(path), "w", newline="") as fh:
        w = csv.writer(fh)
        if header:
            w.writerow(header)
        for row in np.atleast_2d(M):
            w.writerow([repr(float(v)) for v in row])
