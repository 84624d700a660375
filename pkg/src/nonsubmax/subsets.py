"""Ground sets, subset masks and the set-function evaluation contract.

A subset of a ground set ``{0, ..., n-1}`` is stored as a plain Python ``int``
whose bit ``i`` marks membership of element ``i``.  Every objective in the
package is a :class:`SetFunction`: a callable ``F(mask) -> float`` with a
fixed ground-set size ``n`` and ``F(0) == 0``.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import ArgumentError, EvaluationError, ScaleError

MAX_GROUND_SET = 64
FULL_ENUM_CAP = 14
ZERO_TOL = 1e-9


@dataclass(frozen=True)
class GroundSet:
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GROUND_SET:
            raise ArgumentError(f"ground set size must be in [1, {MAX_GROUND_SET}], got {self.n}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def validate(self, mask: int) -> int:
        if mask < 0 or mask >> self.n:
            raise ArgumentError(f"mask {mask:#x} has bits outside ground set of size {self.n}")
        return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def elements(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


class SetFunction:
    """Base class for normalized set functions over ``{0, ..., n-1}``.

    Subclasses implement :meth:`evaluate`; calling the object validates the
    mask and wraps numerical failures in :class:`EvaluationError`.
    """

    n: int

    def __init__(self, n: int):
        self.ground = GroundSet(n)
        self.n = n

    def evaluate(self, mask: int) -> float:
        raise NotImplementedError

    def __call__(self, mask: int) -> float:
        self.ground.validate(mask)
        try:
            return float(self.evaluate(mask))
        except (np.linalg.LinAlgError, ArithmeticError) as exc:
            raise EvaluationError(f"evaluation failed at mask {mask:#x}: {exc}") from exc


class FunctionAdapter(SetFunction):
    """Wrap a bare callable ``mask -> float`` as a :class:`SetFunction`."""

    def __init__(self, n: int, fn: Callable[[int], float], name: str = "adapter"):
        super().__init__(n)
        self._fn = fn
        self.name = name

    def evaluate(self, mask: int) -> float:
        return self._fn(mask)


class ShiftedFunction(SetFunction):
    """``F(S) - F(empty)``; leaves every marginal gain unchanged."""

    def __init__(self, inner: SetFunction):
        super().__init__(inner.n)
        self.inner = inner
        self.offset = inner(0)

    def evaluate(self, mask: int) -> float:
        if mask == 0:
            return 0.0
        return self.inner(mask) - self.offset


class MemoizedEvaluator(SetFunction):
    """Caching wrapper; thread-safe and transparent to the inner function."""

    def __init__(self, inner: SetFunction):
        super().__init__(inner.n)
        self.inner = inner
        self.cache: dict[int, float] = {}
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()

    def __call__(self, mask: int) -> float:
        with self._lock:
            if mask in self.cache:
                self.hits += 1
                return self.cache[mask]
        value = self.inner(mask)
        with self._lock:
            # a concurrent miss on the same mask computed the same value
            self.cache.setdefault(mask, value)
            self.misses += 1
        return value

    def evaluate(self, mask: int) -> float:
        return self(mask)


def memoize(F: SetFunction) -> MemoizedEvaluator:
    return F if isinstance(F, MemoizedEvaluator) else MemoizedEvaluator(F)


def marginal_gain(F: SetFunction, omega: int, S: int) -> float:
    """``F(omega | S) - F(S)``, exactly zero when ``omega`` is contained in ``S``."""
    F.ground.validate(omega)
    F.ground.validate(S)
    if omega & ~S == 0:
        return 0.0
    return F(omega | S) - F(S)


def enumerate_k_subsets(n: int, k: int) -> list[int]:
    """All masks of cardinality ``k`` over ``n`` elements, ascending."""
    if not 0 <= n <= MAX_GROUND_SET:
        raise ArgumentError(f"n must be in [0, {MAX_GROUND_SET}], got {n}")
    if not 0 <= k <= n:
        raise ArgumentError(f"k must satisfy 0 <= k <= n, got k={k}, n={n}")
    masks = [mask_of(c) for c in itertools.combinations(range(n), k)]
    masks.sort()
    return masks


def _check_cap(n: int, cap: int, override: bool) -> None:
    if n > cap and not override:
        raise ScaleError(f"n={n} exceeds full-enumeration cap {cap}")


def enumerate_all_pairs(n: int, cap: int = FULL_ENUM_CAP, override: bool = False) -> Iterator[tuple[int, int]]:
    """Yield every ordered pair ``(omega, S)``; outer loop over ``S``."""
    _check_cap(n, cap, override)
    size = 1 << n
    for S in range(size):
        for omega in range(size):
            yield omega, S


def bit_matrix(n: int) -> np.ndarray:
    """``(2**n, n)`` 0/1 array; row ``m`` is the indicator vector of mask ``m``."""
    masks = np.arange(1 << n, dtype=np.int64)
    return ((masks[:, None] >> np.arange(n)) & 1).astype(np.int8)


def value_table(F: SetFunction, cap: int = FULL_ENUM_CAP, override: bool = False) -> np.ndarray:
    """Values of ``F`` on all ``2**n`` masks, indexed by mask."""
    _check_cap(F.n, cap, override)
    return np.array([F(m) for m in range(1 << F.n)], dtype=float)
