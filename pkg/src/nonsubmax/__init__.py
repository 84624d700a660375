"""Greedy maximization of monotone non-submodular set functions.

Exact desk-scale certificates (submodularity ratio, generalized curvature),
the resulting approximation guarantees, and brute-force verification on a
zoo of objectives.
"""
from .bounds import (
    BoundReport,
    aopt_param_bounds,
    bound_const,
    bound_extended,
    bound_K,
    det_gamma_bound,
    lp_gamma0,
    r2_gamma_bound,
)
from .certificates import (
    CertificateReport,
    alpha_full,
    alpha_greedy,
    alpha_total,
    certify,
    check_step_inequality,
    gamma_full,
    gamma_greedy,
    is_submodular,
    is_supermodular,
)
from .errors import (
    ArgumentError,
    ConditioningError,
    DegenerateInstanceError,
    EvaluationError,
    ScaleError,
    UnboundedError,
)
from .greedy import GreedyTrace, run_greedy
from .lp import (
    PolytopeSpec,
    lp_example_1,
    lp_example_2,
    degeneracy_report,
    load_lp,
    parse_lp,
    solve_restricted,
)
from .objectives import (
    AOptConfig,
    AOptimality,
    DetConfig,
    Determinantal,
    LPAuxiliary,
    Modular,
    R2Config,
    RSquared,
    TightConfig,
    TightInstance,
    is_monotone,
    se_kernel,
)
from .oracle import OptResult, approx_ratio, brute_force_opt, verify_guarantee
from .subsets import (
    GroundSet,
    MemoizedEvaluator,
    SetFunction,
    elements,
    enumerate_all_pairs,
    enumerate_k_subsets,
    marginal_gain,
    mask_of,
    memoize,
    value_table,
)
from .harness import (
    ExperimentConfig,
    gen_gaussian_design,
    gen_r2_instance,
    gen_random_lp,
    gen_random_psd,
    load_config,
    load_csv_matrix,
    run_experiment,
    to_csv,
    to_json,
)

__version__ = "0.1.0"
