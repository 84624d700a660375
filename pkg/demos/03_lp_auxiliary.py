"""
LP-auxiliary set functions
==========================

The optimal LP value with variables outside S pinned to zero is a
nondecreasing set function that need not be submodular.  The small example
below shows an element whose gain grows as the set grows.
"""

from pathlib import Path

from nonsubmax import LPAuxiliary, lp_example_1, degeneracy_report, is_submodular, load_lp, lp_gamma0
from nonsubmax.subsets import elements, mask_of

P = lp_example_1()
F = LPAuxiliary(P)
for S in range(1 << P.n):
    print(f"F({[i + 1 for i in elements(S)]}) = {F(S):g}")

g_small = F(mask_of([1, 2])) - F(mask_of([1]))
g_large = F(mask_of([0, 1, 2])) - F(mask_of([0, 1]))
print(f"gain of element 3: {g_small:g} on {{2}}, {g_large:g} on {{1,2}}; submodular = {is_submodular(F)}")
print("gamma_0 =", lp_gamma0(P))
print("degenerate supports:", [[i + 1 for i in elements(S)] for S, d in degeneracy_report(P).items() if d])

# the same machinery reads the plain-text LP format
Q = load_lp(Path(__file__).parent / "data" / "lp_example_2.lp")
G = LPAuxiliary(Q)
print("second example, F(V) =", G(mask_of(range(Q.n))), " F({2,3}) =", G(mask_of([1, 2])))
