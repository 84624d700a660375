"""
A full sweep, as the command line runs it
=========================================

Load a config, run the sweep, and print the per-budget rows.  The same result
is written by ``nonsubmax run demos/configs/aopt_synthetic.cfg -o out.csv``.
"""

import sys
from pathlib import Path

from nonsubmax import load_config, run_experiment, to_csv

here = Path(__file__).parent
name = sys.argv[1] if len(sys.argv) > 1 else "aopt_fixture.cfg"
cfg = load_config(here / "configs" / name)
res = run_experiment(cfg, write=False)

for r in res.rows:
    print(f"K={r.K}  ratio={r.ratio_mean:.6f}  gamma_G={r.gamma_greedy_mean:.4f}  "
          f"alpha_G={r.alpha_greedy_mean:.4f}  alpha_total={r.alpha_total_mean:.6f}  bound_K={r.bound_K:.4f}")
print("falsified cases:", res.falsified)
print(to_csv(res).splitlines()[0])
