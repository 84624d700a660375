import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonsubmax.bounds import (
    aopt_param_bounds,
    bound_const,
    bound_extended,
    bound_K,
    det_gamma_bound,
    lp_gamma0,
    r2_gamma_bound,
)
from nonsubmax.certificates import alpha_full, certify, gamma_full
from nonsubmax.errors import ArgumentError, DegenerateInstanceError
from nonsubmax.greedy import run_greedy
from nonsubmax.harness.data import gen_gaussian_design, gen_random_lp, gen_random_psd
from nonsubmax.lp import PolytopeSpec, lp_example_1
from nonsubmax.objectives import (
    AOptConfig,
    AOptimality,
    DetConfig,
    Determinantal,
    LPAuxiliary,
    R2Config,
    RSquared,
    TightConfig,
    TightInstance,
)
from nonsubmax.oracle import brute_force_opt
from nonsubmax.subsets import memoize

unit = st.floats(0.0, 1.0)


def test_bound_const_examples():
    assert bound_const(1, 1) == pytest.approx(1 - 1 / math.e, abs=1e-10)
    assert bound_const(1, 1) == pytest.approx(0.6321205588, abs=1e-10)
    assert bound_const(0, 0.37) == 0.37
    assert bound_const(1, 0.5) == pytest.approx(0.393469, abs=1e-6)


def test_bound_K_examples():
    assert bound_K(0.8, 0.5, 4) == pytest.approx(1.25 * (1 - 0.9 ** 4), abs=1e-12)
    assert bound_K(0.8, 0.5, 4) == pytest.approx(0.429875, abs=1e-6)
    assert bound_K(1, 1, 1) == pytest.approx(1.0)
    seq = [bound_K(1, 1, K) for K in (1, 2, 5, 50, 5000)]
    assert all(a > b for a, b in zip(seq, seq[1:]))
    assert seq[-1] == pytest.approx(1 - 1 / math.e, abs=1e-4)
    assert seq[-1] > 1 - 1 / math.e


def test_bound_K_small_alpha_limit():
    for K in (1, 3, 10):
        assert bound_K(0.0, 0.4, K) == 0.4
        assert bound_K(1e-9, 0.4, K) == pytest.approx(0.4, abs=1e-8)


def test_bound_extended_examples():
    assert bound_extended(0.6, 0.7, 3, 3) == pytest.approx(bound_const(0.6, 0.7), abs=1e-15)
    assert bound_extended(1, 1, 3, 6) == pytest.approx(1 - math.exp(-2), abs=1e-6)
    assert bound_extended(1, 0.5, 2, 4) == pytest.approx(1 - math.exp(-1), abs=1e-6)
    # uncapped on purpose
    assert bound_extended(0, 1.0, 1, 3) == 3.0


def test_argument_errors():
    for args in [(-0.1, 0.5), (1.1, 0.5), (0.5, 1.5)]:
        with pytest.raises(ArgumentError):
            bound_const(*args)
    with pytest.raises(ArgumentError):
        bound_K(0.5, 0.5, 0)
    with pytest.raises(ArgumentError):
        bound_extended(0.5, 0.5, 3, 2)


def test_bound_K_dominates_grid():
    grid = np.round(np.arange(0.05, 1.0001, 0.05), 10)
    for a in grid:
        for g in grid:
            c = bound_const(a, g)
            for K in range(1, 21):
                assert bound_K(a, g, K) >= c - 1e-12


@settings(max_examples=200)
@given(unit, unit, unit)
def test_bound_const_shape(a, g1, g2):
    lo, hi = sorted((g1, g2))
    assert bound_const(a, lo) <= bound_const(a, hi) + 1e-15
    assert bound_const(lo, a) >= bound_const(hi, a) - 1e-15
    assert bound_const(a, 0.0) == 0.0
    assert 0 <= bound_const(a, hi) <= 1


@settings(max_examples=200)
@given(unit, unit, st.integers(1, 50))
def test_bound_K_matches_direct_formula(a, g, K):
    if a < 1e-4:
        # the direct form cancels catastrophically here; compare with the limit
        assert bound_K(a, g, K) == pytest.approx(g, abs=1e-4)
        return
    direct = (1 - ((K - a * g) / K) ** K) / a
    assert bound_K(a, g, K) == pytest.approx(direct, abs=1e-9)


def test_aopt_orthonormal():
    g, a = aopt_param_bounds(AOptConfig(np.eye(2)))
    assert g == pytest.approx(0.5) and a == pytest.approx(0.5)


def test_aopt_bounds_hold(rng):
    for _ in range(5):
        cfg = AOptConfig(gen_gaussian_design(8, 4, 0.3, rng), beta=1.0, sigma=1.0)
        g, a = aopt_param_bounds(cfg)
        assert 0 < g <= 1
        F = AOptimality(cfg)
        assert gamma_full(F) >= g - 1e-7
        assert alpha_full(F) <= a + 1e-7


def test_det_identity_bound():
    cfg = DetConfig(np.eye(4), sigma=1.0)
    for K in range(1, 5):
        assert det_gamma_bound(cfg, K) == pytest.approx(K / (2 ** K - 1))


def test_det_bound_k1_at_most_one(rng):
    cfg = DetConfig(gen_random_psd(5, 0.1, 1.0, rng), sigma=0.5)
    assert 0 < det_gamma_bound(cfg, 1) <= 1


def test_det_bound_degenerate():
    with pytest.raises(DegenerateInstanceError):
        det_gamma_bound(DetConfig(np.diag([1.0, 0.0])), 1)


def test_det_bound_holds(rng):
    for _ in range(5):
        cfg = DetConfig(gen_random_psd(6, 0.05, 1.0, rng), sigma=1.0)
        F = memoize(Determinantal(cfg))
        rep = certify(F, run_greedy(F, 3), 3, full=False)
        assert rep.gamma_greedy >= det_gamma_bound(cfg, 3) - 1e-7


def test_r2_bound_examples(rng):
    assert r2_gamma_bound(R2Config(np.eye(3), [0.1, 0.2, 0.3])) == pytest.approx(1.0)
    assert r2_gamma_bound(R2Config(np.array([[1, 0.5], [0.5, 1]]), [0.3, 0.3])) == pytest.approx(0.5)
    for _ in range(5):
        B = rng.standard_normal((6, 6))
        C = B @ B.T + np.eye(6)
        D = np.diag(1 / np.sqrt(np.diag(C)))
        cfg = R2Config(D @ C @ D, rng.uniform(0, 0.3, 6))
        assert gamma_full(RSquared(cfg)) >= r2_gamma_bound(cfg) - 1e-7


def test_lp_gamma0():
    g0 = lp_gamma0(lp_example_1())
    assert 0 < g0 <= 1
    zero = PolytopeSpec(A=[[1.0, 1.0]], b=[1.0], d=[0.0, 0.0])
    assert lp_gamma0(zero) == 1.0


def test_lp_gamma0_below_measured():
    for seed in range(5):
        P = gen_random_lp(6, 20, seed)
        assert gamma_full(LPAuxiliary(P)) >= lp_gamma0(P) - 1e-7


def test_tight_ratio_equals_bound():
    for K in (2, 3):
        for g in (0.25, 0.5, 1.0):
            for a in (0.2, 1.0):
                F = TightInstance(TightConfig(K, g, a))
                ratio = run_greedy(F, K).final_value / brute_force_opt(F, K).best_value
                assert ratio == pytest.approx(bound_K(a, g, K), abs=1e-9)


def test_supermodular_tight_ratio_at_least_gamma():
    for K in (2, 4):
        F = TightInstance(TightConfig(K, 0.5, 0.0))
        ratio = run_greedy(F, K).final_value / (1 / 0.5)
        assert ratio >= bound_K(0.0, 0.5, K) - 1e-9
