"""Instance generation, experiment sweeps and the command-line interface."""
from .data import (
    gen_gaussian_design,
    gen_r2_instance,
    gen_random_lp,
    gen_random_psd,
    load_csv_matrix,
    rng_for,
)
from .experiment import ExperimentConfig, ResultRow, load_config, parse_config, run_experiment, to_csv, to_json
