"""
The worst case is attained
==========================

Build the budget-K worst-case family for a grid of (gamma, alpha), check that
its measured parameters are the ones requested, and that greedy lands exactly
on the guarantee.
"""

from nonsubmax import (
    TightConfig,
    TightInstance,
    alpha_full,
    bound_K,
    brute_force_opt,
    gamma_full,
    memoize,
    run_greedy,
    value_table,
)

print(f"{'K':>2} {'gamma':>6} {'alpha':>6} {'ratio':>10} {'bound_K':>10} {'gamma_m':>8} {'alpha_m':>8}")
for K in (2, 3, 4):
    for gamma in (0.25, 0.5, 1.0):
        for alpha in (0.2, 1.0):
            F = memoize(TightInstance(TightConfig(K, gamma, alpha, n_dummies=1)))
            ratio = run_greedy(F, K).final_value / brute_force_opt(F, K).best_value
            T = value_table(F)
            print(f"{K:>2} {gamma:>6} {alpha:>6} {ratio:>10.6f} {bound_K(alpha, gamma, K):>10.6f} "
                  f"{gamma_full(F, table=T):>8.4f} {alpha_full(F, table=T):>8.4f}")
