import json

import numpy as np
import pytest

from nonsubmax.errors import ArgumentError, ScaleError
from nonsubmax.harness import data
from nonsubmax.harness.experiment import (
    ExperimentConfig,
    build_objective,
    parse_config,
    parse_k_range,
    read_rows_csv,
    run_experiment,
    to_csv,
    to_json,
)
from nonsubmax.objectives import AOptimality, LPAuxiliary


def test_gaussian_design_scalar_case():
    X = data.gen_gaussian_design(7, 1, 0.0, seed=3)
    assert np.allclose(np.abs(X), 1.0)


def test_gaussian_design_deterministic_and_normalized():
    a = data.gen_gaussian_design(12, 6, 0.4, seed=11)
    b = data.gen_gaussian_design(12, 6, 0.4, seed=11)
    assert np.array_equal(a, b)
    assert np.allclose(np.linalg.norm(a, axis=0), 1.0)
    with pytest.raises(ArgumentError):
        data.gen_gaussian_design(3, 2, 1.0, seed=0)


def median_abs_cosine(corr, seed):
    X = data.gen_gaussian_design(6, 4, corr, seed)
    G = np.abs(X.T @ X)
    return np.median(G[np.triu_indices(6, 1)])


def test_correlation_increases_cosines():
    hi = np.median([median_abs_cosine(0.99, s) for s in range(100)])
    lo = np.median([median_abs_cosine(0.2, s) for s in range(100)])
    assert hi > lo


def test_random_psd():
    assert np.allclose(data.gen_random_psd(5, 1.0, 1.0, seed=0), np.eye(5), atol=1e-10)
    M = data.gen_random_psd(10, 0.0, 1.0, seed=4)
    w = np.linalg.eigvalsh(M)
    assert w.min() >= -1e-9 and w.max() <= 1 + 1e-9
    assert np.array_equal(M, data.gen_random_psd(10, 0.0, 1.0, seed=4))
    with pytest.raises(ArgumentError):
        data.gen_random_psd(3, 0.5, 0.1, seed=0)


def test_random_lp():
    P = data.gen_random_lp(6, 20, seed=5)
    assert P.A.shape == (20, 6) and P.A.min() >= 0 and P.A.max() <= 1
    assert np.all(P.b == 1) and np.all(P.d == 1) and np.all(P.ubar == 1)
    assert np.array_equal(P.A, data.gen_random_lp(6, 20, seed=5).A)


def test_repeat_streams_independent_of_count():
    a = data.rng_for(7, 3).standard_normal(5)
    b = data.rng_for(7, 3).standard_normal(5)
    c = data.rng_for(7, 4).standard_normal(5)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_csv_loader(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("1,2\n3,4\n")
    assert np.array_equal(data.load_csv_matrix(p), [[1, 2], [3, 4]])
    p.write_text("a,b\n1,2\n")
    assert np.array_equal(data.load_csv_matrix(p), [[1, 2]])


def test_csv_round_trip(tmp_path):
    M = np.random.default_rng(0).standard_normal((14, 14))
    p = tmp_path / "fixture.csv"
    data.save_csv_matrix(p, M, header=[f"f{i}" for i in range(14)])
    assert np.array_equal(data.load_csv_matrix(p), M)


@pytest.mark.parametrize("text, where", [("1,2\n3\n", ":2:"), ("1,2\n3,x\n", ":2:"), ("a,b\n", "no numeric")])
def test_csv_errors(tmp_path, text, where):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(ArgumentError, match=where):
        data.load_csv_matrix(p)


def test_parse_k_range():
    assert parse_k_range("1-4") == [1, 2, 3, 4]
    assert parse_k_range("2, 4,6") == [2, 4, 6]
    assert parse_k_range("1-3,8") == [1, 2, 3, 8]


def test_parse_config():
    cfg = parse_config("""
        # sweep
        objective = det
        K_range = 1-3
        repeats = 4
        sigma = 2.0
        compute_opt = no
    """)
    assert cfg.objective == "det" and cfg.K_range == [1, 2, 3]
    assert cfg.repeats == 4 and cfg.sigma == 2.0 and cfg.compute_opt is False


@pytest.mark.parametrize("text", ["objective = foo", "bogus = 1", "repeats = x", "no equals here", "repeats = 0"])
def test_parse_config_errors(text):
    with pytest.raises(ArgumentError):
        parse_config(text)


def test_build_objective_from_file(tmp_path):
    M = np.random.default_rng(1).standard_normal((14, 14))
    data.save_csv_matrix(tmp_path / "x.csv", M)
    cfg = parse_config("objective = aopt\nsource = file\ndata_file = x.csv\nn = 14\nsigma = 1\n", base_dir=tmp_path)
    F = build_objective(cfg)
    assert isinstance(F, AOptimality) and F.n == 14
    assert np.allclose(np.linalg.norm(F.cfg.X, axis=0), 1.0)


def test_build_lp_from_file(tmp_path):
    (tmp_path / "p.lp").write_text("3 2 4 1 4 inf inf inf\n2 1 0 2\n0 1 2 2\n")
    cfg = parse_config("objective = lp\nsource = file\ndata_file = p.lp\n", base_dir=tmp_path)
    F = build_objective(cfg)
    assert isinstance(F, LPAuxiliary) and F(0b111) == pytest.approx(8.0)


def small_cfg(**kw):
    base = dict(objective="aopt", n=8, d=4, K_range=[1, 2, 3], repeats=3, seed=5, sigma=0.5)
    base.update(kw)
    return ExperimentConfig(**base)


def test_run_is_byte_deterministic(tmp_path):
    outs = []
    for i in range(2):
        cfg = small_cfg(output=str(tmp_path / f"r{i}.json"))
        run_experiment(cfg)
        outs.append((tmp_path / f"r{i}.json").read_bytes())
    assert outs[0].replace(b"r0.json", b"r1.json") == outs[1]


def test_adding_repeats_keeps_earlier_rows():
    a = run_experiment(small_cfg(repeats=2), write=False)
    b = run_experiment(small_cfg(repeats=4), write=False)
    for i in range(2):
        for K in (1, 2, 3):
            for key in ("greedy_value", "opt_value", "gamma_greedy", "alpha_greedy"):
                assert a.per_repeat[i][K][key] == b.per_repeat[i][K][key]


def test_json_and_csv_agree():
    res = run_experiment(small_cfg(), write=False)
    j = json.loads(to_json(res))
    assert j["schema_version"] == 1
    rows = read_rows_csv(to_csv(res))
    assert len(rows) == len(j["rows"])
    for jr, cr in zip(j["rows"], rows):
        for k, v in jr.items():
            if v is None:
                assert cr[k] is None
            else:
                assert float(cr[k]) == pytest.approx(float(v), rel=1e-12)


def test_workers_match_sequential():
    a = run_experiment(small_cfg(repeats=4), write=False)
    b = run_experiment(small_cfg(repeats=4, workers=2), write=False)
    assert to_json(a).replace('"workers": 1', "") == to_json(b).replace('"workers": 2', "")


def test_rows_respect_bound():
    res = run_experiment(small_cfg(param_source="full"), write=False)
    assert res.falsified == 0
    for r in res.rows:
        assert 0 < r.ratio_mean <= 1 + 1e-9
        assert r.ratio_mean >= r.bound_K - 1e-7
        assert r.gamma_full_mean is not None


def test_tight_sweep_ratio_equals_bound():
    res = run_experiment(ExperimentConfig(objective="tight", K_range=[2, 3, 4], gamma=0.5, alpha=0.8,
                                          param_source="full"), write=False)
    for r in res.rows:
        assert r.ratio_mean == pytest.approx(r.bound_K, abs=1e-9)


def test_det_ratio_at_least_gamma_greedy():
    res = run_experiment(ExperimentConfig(objective="det", n=10, sigma=2.0, K_range=[1, 2, 3, 4], repeats=3),
                         write=False)
    assert res.falsified == 0
    for i in range(3):
        for K, rec in res.per_repeat[i].items():
            assert rec["ratio"] >= rec["gamma_greedy"] - 1e-7


def test_lp_and_r2_runs():
    for cfg in (ExperimentConfig(objective="lp", n=6, m=20, K_range=[1, 2, 3], repeats=2),
                ExperimentConfig(objective="r2", n=6, m=30, K_range=[1, 2, 3], repeats=2)):
        assert run_experiment(cfg, write=False).falsified == 0


def test_scale_error_names_case():
    cfg = small_cfg(n=15, K_range=[2], param_source="full", compute_opt=False)
    with pytest.raises(ScaleError, match=r"K=2, repeat=0"):
        run_experiment(cfg, write=False)


def test_budget_outside_range():
    with pytest.raises(ArgumentError, match="K=9"):
        run_experiment(small_cfg(K_range=[9]), write=False)
