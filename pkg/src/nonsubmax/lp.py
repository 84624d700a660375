"""Primal simplex for packing polytopes and the support-restricted LP value.

The polytopes have the form ``{x : 0 <= x <= ubar, A x <= b}`` with ``A, b``
entrywise nonnegative, so the origin (all-slack basis) is always a feasible
starting vertex and no phase one is needed.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ArgumentError, ScaleError, UnboundedError
from .subsets import FULL_ENUM_CAP, elements

OPT_TOL = 1e-9
DEGEN_TOL = 1e-9
MAX_ITER = 10_000


@dataclass
class PolytopeSpec:
    A: np.ndarray
    b: np.ndarray
    d: np.ndarray
    ubar: np.ndarray = None

    def __post_init__(self):
        self.A = np.atleast_2d(np.asarray(self.A, dtype=float))
        m, n = self.A.shape
        self.b = np.asarray(self.b, dtype=float).reshape(m)
        self.d = np.asarray(self.d, dtype=float).reshape(n)
        if self.ubar is None:
            self.ubar = np.full(n, np.inf)
        self.ubar = np.asarray(self.ubar, dtype=float).reshape(n)
        if np.any(self.A < 0) or np.any(self.b < 0):
            raise ArgumentError("A and b must be entrywise nonnegative")
        if np.any(self.ubar < 0):
            raise ArgumentError("upper bounds must be nonnegative")

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def m(self) -> int:
        return self.A.shape[0]


@dataclass
class SimplexResult:
    value: float
    x: np.ndarray
    basis: list[int] = field(default_factory=list)
    degenerate: bool = False
    iterations: int = 0


def simplex_max(c: np.ndarray, G: np.ndarray, h: np.ndarray, tol: float = OPT_TOL):
    """Maximize ``c @ y`` over ``G y <= h, y >= 0`` with ``h >= 0``.

    Tableau primal simplex from the slack basis using Bland's rule for both
    the entering and the leaving variable.  Returns ``(y, basis, iters)``;
    basis indices ``>= len(c)`` refer to slack variables.
    """
    m, k = G.shape
    T = np.zeros((m + 1, k + m + 1))
    T[:m, :k] = G
    T[:m, k:k + m] = np.eye(m)
    T[:m, -1] = h
    T[m, :k] = -c
    basis = list(range(k, k + m))
    it = 0
    while True:
        reduced = T[m, :-1]
        entering = np.flatnonzero(reduced < -tol)
        if entering.size == 0:
            break
        j = int(entering[0])
        col = T[:m, j]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            raise UnboundedError(f"LP is unbounded along variable {j}")
        ratios = T[rows, -1] / col[rows]
        rmin = ratios.min()
        tied = rows[ratios <= rmin + tol * max(1.0, abs(rmin))]
        # Bland: among tied rows leave the basic variable with lowest index
        i = int(min(tied, key=lambda r: basis[r]))
        T[i] /= T[i, j]
        for r in range(m + 1):
            if r != i and T[r, j] != 0.0:
                T[r] -= T[r, j] * T[i]
        basis[i] = j
        it += 1
        if it > MAX_ITER:
            raise RuntimeError("simplex iteration limit exceeded")
    y = np.zeros(k + m)
    for r, v in enumerate(basis):
        y[v] = T[r, -1]
    return y, basis, it


def solve_restricted(P: PolytopeSpec, S: int) -> SimplexResult:
    """Maximize ``d @ x`` over ``x`` in ``P`` with ``supp(x)`` inside mask ``S``."""
    n = P.n
    if S < 0 or S >> n:
        raise ArgumentError(f"support mask {S:#x} has bits outside {n} variables")
    cols = elements(S)
    x = np.zeros(n)
    if not cols:
        basis = list(range(P.m))
        return SimplexResult(0.0, x, basis, bool(np.any(P.b <= DEGEN_TOL)), 0)
    G = P.A[:, cols]
    h = P.b
    ub = P.ubar[cols]
    finite = np.flatnonzero(np.isfinite(ub))
    if finite.size:
        rows = np.zeros((finite.size, len(cols)))
        rows[np.arange(finite.size), finite] = 1.0
        G = np.vstack([G, rows])
        h = np.concatenate([h, ub[finite]])
    y, basis, it = simplex_max(P.d[cols], G, h)
    k = len(cols)
    x[cols] = y[:k]
    degenerate = any(y[v] <= DEGEN_TOL for v in basis)
    # report basis in original variable numbering; slacks follow the n variables
    named = [cols[v] if v < k else n + (v - k) for v in basis]
    value = float(P.d @ x)
    return SimplexResult(value, x, sorted(named), degenerate, it)


def degeneracy_report(P: PolytopeSpec, cap: int = FULL_ENUM_CAP, override: bool = False) -> dict[int, bool]:
    """Degeneracy flag of the optimal vertex for every support mask."""
    if P.n > cap and not override:
        raise ScaleError(f"n={P.n} exceeds enumeration cap {cap}")
    return {S: solve_restricted(P, S).degenerate for S in range(1 << P.n)}


def _numbers(line: str) -> list[float]:
    return [float(tok) for tok in line.replace(",", " ").split()]


def parse_lp(text: str) -> PolytopeSpec:
    """Parse the text LP format.

    Header line: ``n m d_1 .. d_n ubar_1 .. ubar_n`` (``inf`` allowed for an
    absent bound).  Then ``m`` lines ``a_i1 .. a_in b_i``.  Blank lines and
    ``#`` comments are ignored.
    """
    lines = []
    for raw in io.StringIO(text):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ArgumentError("empty LP file")
    try:
        head = _numbers(lines[0])
    except ValueError as exc:
        raise ArgumentError(f"line 1: {exc}") from exc
    if len(head) < 2:
        raise ArgumentError("line 1: header needs n and m")
    n, m = int(head[0]), int(head[1])
    if len(head) != 2 + 2 * n:
        raise ArgumentError(f"line 1: expected {2 + 2 * n} numbers, got {len(head)}")
    d = head[2:2 + n]
    ubar = head[2 + n:]
    if len(lines) - 1 != m:
        raise ArgumentError(f"expected {m} constraint rows, got {len(lines) - 1}")
    A, b = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            row = _numbers(line)
        except ValueError as exc:
            raise ArgumentError(f"line {lineno}: {exc}") from exc
        if len(row) != n + 1:
            raise ArgumentError(f"line {lineno}: expected {n + 1} numbers, got {len(row)}")
        A.append(row[:n])
        b.append(row[n])
    return PolytopeSpec(np.array(A).reshape(m, n), np.array(b), np.array(d), np.array(ubar))


def format_lp(P: PolytopeSpec) -> str:
    def fmt(v):
        return "inf" if math.isinf(v) else repr(float(v))

    head = [str(P.n), str(P.m)] + [fmt(v) for v in P.d] + [fmt(v) for v in P.ubar]
    rows = [" ".join(fmt(v) for v in list(P.A[i]) + [P.b[i]]) for i in range(P.m)]
    return "\n".join([" ".join(head)] + rows) + "\n"


def load_lp(path) -> PolytopeSpec:
    return parse_lp(Path(path).read_text())


def lp_example_1() -> PolytopeSpec:
    """``max 4x1 + x2 + 4x3`` s.t. ``2x1 + x2 <= 2``, ``x2 + 2x3 <= 2``."""
    return PolytopeSpec(A=[[2, 1, 0], [0, 1, 2]], b=[2, 2], d=[4, 1, 4])


def lp_example_2() -> PolytopeSpec:
    """``max 10x1 + 12x2 + 12x3`` over three packing rows of right-hand side 20."""
    return PolytopeSpec(A=[[1, 2, 2], [2, 1, 2], [2, 2, 1]], b=[20, 20, 20], d=[10, 12, 12])
