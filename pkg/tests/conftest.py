import itertools
import math

import numpy as np
import pytest

from nonsubmax.subsets import FunctionAdapter, elements, popcount


def square_card(n):
    return FunctionAdapter(n, lambda m: float(popcount(m)) ** 2, "card^2")


def capped_card(n, cap=2):
    return FunctionAdapter(n, lambda m: float(min(popcount(m), cap)), "min(card, cap)")


def coverage(sets):
    """Weighted-free coverage: number of items covered by the chosen sets."""
    sets = [frozenset(s) for s in sets]

    def f(m):
        covered = set()
        for i in elements(m):
            covered |= sets[i]
        return float(len(covered))

    return FunctionAdapter(len(sets), f, "coverage")


# ---- independent loop-based oracles, deliberately unvectorized ----

def oracle_gamma_full(F, tol=1e-9):
    n = F.n
    best = math.inf
    for S in range(1 << n):
        for omega in range(1 << n):
            den = F(omega | S) - F(S)
            if den <= tol:
                continue
            num = sum(F(S | (1 << w)) - F(S) for w in elements(omega & ~S))
            best = min(best, num / den)
    return 1.0 if best is math.inf else min(1.0, max(0.0, best))


def oracle_alpha_full(F, tol=1e-9):
    n = F.n
    worst = -math.inf
    for S in range(1 << n):
        for omega in range(1 << n):
            for i in elements(S & ~omega):
                rest = S & ~(1 << i)
                base = F(rest | (1 << i)) - F(rest)
                if base <= tol:
                    continue
                u = rest | omega
                worst = max(worst, 1 - (F(u | (1 << i)) - F(u)) / base)
    return 0.0 if worst is -math.inf else min(1.0, max(0.0, worst))


def oracle_gamma_greedy(F, trace, K, tol=1e-9):
    best = math.inf
    for combo in itertools.combinations(range(F.n), K):
        omega = sum(1 << c for c in combo)
        for t in range(K):
            S = trace.chain[t]
            den = F(omega | S) - F(S)
            if den <= tol:
                continue
            num = sum(F(S | (1 << w)) - F(S) for w in elements(omega & ~S))
            best = min(best, num / den)
    return 1.0 if best is math.inf else min(1.0, max(0.0, best))


def oracle_alpha_greedy(F, trace, K, tol=1e-9):
    if K in (1, F.n):
        return 0.0
    worst = -math.inf
    for combo in itertools.combinations(range(F.n), K):
        omega = sum(1 << c for c in combo)
        for i in range(1, K):
            j = trace.chosen[i - 1]
            if omega >> j & 1:
                continue
            prev = trace.chain[i - 1]
            base = F(prev | (1 << j)) - F(prev)
            if base <= tol:
                continue
            u = prev | omega
            worst = max(worst, 1 - (F(u | (1 << j)) - F(u)) / base)
    return 0.0 if worst is -math.inf else min(1.0, max(0.0, worst))


def oracle_opt(F, K):
    best = -math.inf
    for k in range(K + 1):
        for combo in itertools.combinations(range(F.n), k):
            best = max(best, F(sum(1 << c for c in combo)))
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# ---- acceptance reporting ----

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
