"""Experiment configuration, instance construction and the sweep runner."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .. import bounds
from ..certificates import alpha_full, alpha_greedy, alpha_total, gamma_full, gamma_greedy
from ..errors import ArgumentError, DegenerateInstanceError, ScaleError
from ..greedy import run_greedy
from ..lp import load_lp
from ..objectives import (
    AOptConfig,
    AOptimality,
    DetConfig,
    Determinantal,
    LPAuxiliary,
    R2Config,
    RSquared,
    TightConfig,
    TightInstance,
    normalize_columns,
    se_kernel,
)
from ..oracle import GUARANTEE_TOL, brute_force_opt
from ..subsets import FULL_ENUM_CAP, ZERO_TOL, SetFunction, memoize, value_table
from . import data

SCHEMA_VERSION = 1
OBJECTIVES = ("aopt", "det", "r2", "lp", "tight")


@dataclass
class ExperimentConfig:
    objective: str = "aopt"
    source: str = "synthetic"
    data_file: str = ""
    K_range: list = field(default_factory=lambda: [1, 2, 3])
    seed: int = 0
    repeats: int = 1
    param_source: str = "greedy"
    compute_opt: bool = True
    output: str = ""
    format: str = "json"
    workers: int = 1
    timing: bool = False
    # instance parameters; each objective reads the ones it needs
    n: int = 12
    d: int = 6
    m: int = 20
    corr: float = 0.2
    beta: float = 1.0
    sigma: float = 5e-4
    eig_low: float = 0.0
    eig_high: float = 1.0
    kernel_h: float = 0.0
    a_scale: float = 1.0
    noise: float = 1.0
    gamma: float = 0.5
    alpha: float = 1.0
    n_dummies: int = 0
    transpose: bool = True

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ArgumentError(f"objective must be one of {OBJECTIVES}, got {self.objective!r}")
        if self.repeats < 1:
            raise ArgumentError("repeats must be at least 1")
        if self.param_source not in ("full", "greedy"):
            raise ArgumentError("param_source must be 'full' or 'greedy'")
        if self.format not in ("json", "csv"):
            raise ArgumentError("format must be 'json' or 'csv'")
        if not self.K_range:
            raise ArgumentError("K_range is empty")
        if self.source not in ("synthetic", "file"):
            raise ArgumentError("source must be 'synthetic' or 'file'")
        if self.source == "file" and not self.data_file:
            raise ArgumentError("source=file requires data_file")

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_k_range(text: str) -> list[int]:
    """``"1-6"``, ``"2,4,6"`` or a mix such as ``"1-3,8"``."""
    out = []
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def parse_config(text: str, base_dir: Path = None) -> ExperimentConfig:
    """Flat ``key = value`` format; ``#`` starts a comment."""
    fields = {f.name: f for f in dataclasses.fields(ExperimentConfig)}
    kwargs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ArgumentError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in fields:
            raise ArgumentError(f"config line {lineno}: unknown key {key!r}")
        default = fields[key].default
        try:
            if key == "K_range":
                kwargs[key] = parse_k_range(value)
            elif isinstance(default, bool):
                kwargs[key] = _parse_bool(value)
            elif isinstance(default, int):
                kwargs[key] = int(value)
            elif isinstance(default, float):
                kwargs[key] = float(value)
            else:
                kwargs[key] = value
        except ValueError as exc:
            raise ArgumentError(f"config line {lineno}: bad value for {key}: {exc}") from exc
    if base_dir is not None and kwargs.get("data_file"):
        p = Path(kwargs["data_file"])
        if not p.is_absolute():
            kwargs["data_file"] = str(base_dir / p)
    return ExperimentConfig(**kwargs)


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    return parse_config(path.read_text(), base_dir=path.parent)


def build_objective(cfg: ExperimentConfig, repeat: int = 0, K: int = None) -> SetFunction:
    """Instance for one repeat; synthetic draws use the ``(seed, repeat)`` stream.

    The tight family depends on the budget, so it is built for ``K``
    (default: the largest budget in the sweep).
    """
    rng = data.rng_for(cfg.seed, repeat)
    kind = cfg.objective
    if kind == "tight":
        return TightInstance(TightConfig(K or max(cfg.K_range), cfg.gamma, cfg.alpha, cfg.n_dummies))
    if kind == "aopt":
        if cfg.source == "file":
            M = data.load_csv_matrix(cfg.data_file)
            X = M.T if cfg.transpose else M
            X = normalize_columns(X[:, : cfg.n])
        else:
            X = data.gen_gaussian_design(cfg.n, cfg.d, cfg.corr, rng)
        return AOptimality(AOptConfig(X, cfg.beta, cfg.sigma))
    if kind == "det":
        if cfg.source == "file":
            M = data.load_csv_matrix(cfg.data_file)
            Sigma = se_kernel(M[: cfg.n], cfg.kernel_h) if cfg.kernel_h > 0 else M
        else:
            Sigma = data.gen_random_psd(cfg.n, cfg.eig_low, cfg.eig_high, rng)
        return Determinantal(DetConfig(Sigma, cfg.sigma))
    if kind == "r2":
        if cfg.source == "file":
            M = data.load_csv_matrix(cfg.data_file)
            r2 = R2Config.from_data(M[:, :-1], M[:, -1])
        else:
            r2 = data.gen_r2_instance(cfg.n, cfg.m, cfg.corr, rng, cfg.noise)
        return RSquared(r2)
    if cfg.source == "file":
        return LPAuxiliary(load_lp(cfg.data_file))
    return LPAuxiliary(data.gen_random_lp(cfg.n, cfg.m, rng, cfg.a_scale))


def theory_gamma_lower(F: SetFunction, K: int) -> Optional[float]:
    """Closed-form lower bound on the relevant submodularity ratio, if one exists."""
    try:
        if isinstance(F, AOptimality):
            return bounds.aopt_param_bounds(F.cfg)[0]
        if isinstance(F, Determinantal):
            return bounds.det_gamma_bound(F.cfg, K)
        if isinstance(F, RSquared):
            return bounds.r2_gamma_bound(F.cfg)
        if isinstance(F, LPAuxiliary):
            return bounds.lp_gamma0(F.P)
        if isinstance(F, TightInstance):
            return F.cfg.gamma
    except (DegenerateInstanceError, ScaleError):
        return None
    return None


@dataclass
class ResultRow:
    K: int
    repeats: int
    ratio_mean: Optional[float]
    ratio_std: Optional[float]
    gamma_greedy_mean: float
    gamma_greedy_std: float
    alpha_greedy_mean: float
    alpha_greedy_std: float
    alpha_total_mean: Optional[float]
    alpha_total_std: Optional[float]
    gamma_full_mean: Optional[float]
    alpha_full_mean: Optional[float]
    bound_const: float
    bound_K: float
    theory_gamma_lower_mean: Optional[float]
    greedy_value_mean: float
    opt_value_mean: Optional[float]
    falsified: int
    runtime_greedy: Optional[float] = None


ROW_FIELDS = [f.name for f in dataclasses.fields(ResultRow)]


def _instance_state(cfg, F, repeat):
    F = memoize(F)
    table = None
    if cfg.param_source == "full":
        if F.n > FULL_ENUM_CAP:
            raise ScaleError(f"full certificates need n <= {FULL_ENUM_CAP}, got n={F.n} (repeat {repeat})")
        table = value_table(F)
    gf = gamma_full(F, table=table) if table is not None else None
    af = alpha_full(F, table=table) if table is not None else None
    return F, gf, af, alpha_total(F)


def _run_budget(cfg, F, K, gf, af, at):
    if not 1 <= K <= F.n:
        raise ArgumentError(f"K={K} outside [1, {F.n}]")
    t0 = time.perf_counter()
    trace = run_greedy(F, K)
    elapsed = time.perf_counter() - t0
    gg = gamma_greedy(F, trace, K)
    ag = alpha_greedy(F, trace, K)
    a, g = (af, gf) if gf is not None else (ag, gg)
    rec = {
        "gamma_greedy": gg,
        "alpha_greedy": ag,
        "alpha_total": at,
        "gamma_full": gf,
        "alpha_full": af,
        "bound_const": bounds.bound_const(a, g),
        "bound_K": bounds.bound_K(a, g, K),
        "theory": theory_gamma_lower(F.inner, K),
        "greedy_value": trace.final_value,
        "opt_value": None,
        "ratio": None,
        "falsified": False,
        "runtime": elapsed,
    }
    if cfg.compute_opt:
        opt = brute_force_opt(F, K)
        rec["opt_value"] = opt.best_value
        if opt.best_value > ZERO_TOL:
            rec["ratio"] = trace.final_value / opt.best_value
        rec["falsified"] = trace.final_value < rec["bound_K"] * opt.best_value - GUARANTEE_TOL
    return rec


def _run_repeat(args):
    cfg, repeat = args
    out = {}
    shared = None
    for K in cfg.K_range:
        try:
            if cfg.objective == "tight":
                state = _instance_state(cfg, build_objective(cfg, repeat, K), repeat)
            else:
                if shared is None:
                    shared = _instance_state(cfg, build_objective(cfg, repeat), repeat)
                state = shared
            out[K] = _run_budget(cfg, *state[:1], K, *state[1:])
        except (ScaleError, ArgumentError) as exc:
            raise type(exc)(f"{exc} (K={K}, repeat={repeat})") from exc
    return out


def _mean_std(vals):
    vals = [v for v in vals if v is not None]
    if not vals:
        return None, None
    a = np.array(vals, dtype=float)
    return float(np.mean(a)), float(np.std(a))


def aggregate(cfg: ExperimentConfig, per_repeat: list[dict]) -> list[ResultRow]:
    rows = []
    for K in cfg.K_range:
        recs = [r[K] for r in per_repeat]

        def col(key):
            return [r[key] for r in recs]

        ratio = _mean_std(col("ratio"))
        gg = _mean_std(col("gamma_greedy"))
        ag = _mean_std(col("alpha_greedy"))
        at = _mean_std(col("alpha_total"))
        rows.append(ResultRow(
            K=K,
            repeats=len(recs),
            ratio_mean=ratio[0],
            ratio_std=ratio[1],
            gamma_greedy_mean=gg[0],
            gamma_greedy_std=gg[1],
            alpha_greedy_mean=ag[0],
            alpha_greedy_std=ag[1],
            alpha_total_mean=at[0],
            alpha_total_std=at[1],
            gamma_full_mean=_mean_std(col("gamma_full"))[0],
            alpha_full_mean=_mean_std(col("alpha_full"))[0],
            bound_const=_mean_std(col("bound_const"))[0],
            bound_K=_mean_std(col("bound_K"))[0],
            theory_gamma_lower_mean=_mean_std(col("theory"))[0],
            greedy_value_mean=_mean_std(col("greedy_value"))[0],
            opt_value_mean=_mean_std(col("opt_value"))[0],
            falsified=sum(bool(f) for f in col("falsified")),
            runtime_greedy=_mean_std(col("runtime"))[0] if cfg.timing else None,
        ))
    return rows


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: list[ResultRow]
    per_repeat: list[dict]

    @property
    def falsified(self) -> int:
        return sum(r.falsified for r in self.rows)


def run_experiment(cfg: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """Sweep ``K_range`` over ``repeats`` instances and aggregate per budget.

    Writes ``cfg.output`` in ``cfg.format`` when ``write`` is set and an
    output path is configured.
    """
    jobs = [(cfg, r) for r in range(cfg.repeats)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            per_repeat = list(pool.map(_run_repeat, jobs))
    else:
        per_repeat = [_run_repeat(j) for j in jobs]
    result = ExperimentResult(cfg, aggregate(cfg, per_repeat), per_repeat)
    if write and cfg.output:
        Path(cfg.output).write_text(to_json(result) if cfg.format == "json" else to_csv(result))
    return result


def to_json(result: ExperimentResult) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "config": result.config.as_dict(),
        "falsified": result.falsified,
        "rows": [dataclasses.asdict(r) for r in result.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["schema_version"] + ROW_FIELDS)
    for r in result.rows:
        d = dataclasses.asdict(r)
        w.writerow([SCHEMA_VERSION] + [_cell(d[k]) for k in ROW_FIELDS])
    return buf.getvalue()


def read_rows_csv(text: str) -> list[dict]:
    """Parse :func:`to_csv` output back into typed dictionaries."""
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        row = {}
        for k in ROW_FIELDS:
            v = rec[k]
            if v == "":
                row[k] = None
            elif k in ("K", "repeats", "falsified"):
                row[k] = int(v)
            else:
                row[k] = float(v)
        out.append(row)
    return out
