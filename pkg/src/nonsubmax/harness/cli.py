"""Command-line entry point: ``run``, ``certify``, ``bound``, ``tight``, ``opt``.

Exit codes: 0 success, 1 argument error, 2 scale error, 3 guarantee falsified.
"""
from __future__ import annotations

import argparse
import json
import sys

from .. import bounds
from ..certificates import alpha_full_detail, certify, gamma_full_detail
from ..errors import ArgumentError, DegenerateInstanceError, EvaluationError, ScaleError, UnboundedError
from ..greedy import run_greedy
from ..objectives import TightConfig, TightInstance
from ..oracle import brute_force_opt
from ..subsets import FULL_ENUM_CAP, elements, memoize, value_table
from .experiment import SCHEMA_VERSION, build_objective, load_config, run_experiment, to_csv, to_json

EXIT_OK, EXIT_ARGS, EXIT_SCALE, EXIT_FALSIFIED = 0, 1, 2, 3
TIGHT_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.output:
        cfg.output = args.output
    if args.format:
        cfg.format = args.format
    result = run_experiment(cfg)
    if not cfg.output:
        sys.stdout.write(to_json(result) if cfg.format == "json" else to_csv(result))
    if result.falsified:
        print(f"guarantee falsified in {result.falsified} (K, repeat) cases", file=sys.stderr)
        return EXIT_FALSIFIED
    return EXIT_OK


def _instance(args):
    cfg = load_config(args.config)
    return memoize(build_objective(cfg, args.repeat, args.K)), cfg


def cmd_certify(args) -> int:
    F, _ = _instance(args)
    if args.cap != FULL_ENUM_CAP:
        print(f"warning: enumeration cap overridden to n <= {args.cap}; runtime grows as 3**n", file=sys.stderr)
    trace = run_greedy(F, args.K)
    report = certify(F, trace, args.K, full=not args.greedy_only, cap=args.cap, override=args.cap != FULL_ENUM_CAP)
    doc = {"schema_version": SCHEMA_VERSION, "n": F.n, "greedy_set": elements(trace.final_set)}
    doc.update(report.as_dict())
    _emit(doc)
    return EXIT_OK


def cmd_opt(args) -> int:
    F, _ = _instance(args)
    res = brute_force_opt(F, args.K)
    _emit({
        "schema_version": SCHEMA_VERSION,
        "K": args.K,
        "best_set": elements(res.best_set),
        "best_mask": res.best_set,
        "best_value": res.best_value,
        "evaluations": res.evaluations,
    })
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.const:
        value = bounds.bound_const(args.alpha, args.gamma)
    elif args.Kprime is not None:
        value = bounds.bound_extended(args.alpha, args.gamma, args.K, args.Kprime)
    else:
        value = bounds.bound_K(args.alpha, args.gamma, args.K)
    print(repr(value))
    return EXIT_OK


def cmd_tight(args) -> int:
    cfg = TightConfig(args.K, args.gamma, args.alpha, args.dummies)
    F = memoize(TightInstance(cfg))
    trace = run_greedy(F, args.K)
    opt = brute_force_opt(F, args.K)
    ratio = trace.final_value / opt.best_value
    expected = bounds.bound_K(args.alpha, args.gamma, args.K)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "K": args.K,
        "gamma": args.gamma,
        "alpha": args.alpha,
        "n": F.n,
        "greedy_set": elements(trace.final_set),
        "greedy_value": trace.final_value,
        "opt_set": elements(opt.best_set),
        "opt_value": opt.best_value,
        "ratio": ratio,
        "bound_K": expected,
        "exact": abs(ratio - expected) <= TIGHT_TOL,
    }
    if F.n <= FULL_ENUM_CAP:
        table = value_table(F)
        doc["gamma_full"] = gamma_full_detail(F, table=table).value
        doc["alpha_full"] = alpha_full_detail(F, table=table).value
    _emit(doc)
    return EXIT_OK if doc["exact"] else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nonsubmax", description="Greedy guarantees for non-submodular maximization.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run an experiment sweep from a config file")
    r.add_argument("config")
    r.add_argument("--output", "-o", default="")
    r.add_argument("--format", choices=["json", "csv"])
    r.set_defaults(func=cmd_run)

    for name, func, helptext in (("certify", cmd_certify, "certificates of one instance"),
                                 ("opt", cmd_opt, "brute-force optimum of one instance")):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("config", help="config file describing the objective")
        c.add_argument("--K", type=int, required=True)
        c.add_argument("--repeat", type=int, default=0, help="instance index within the seed stream")
        if name == "certify":
            c.add_argument("--greedy-only", action="store_true")
            c.add_argument("--cap", type=int, default=FULL_ENUM_CAP)
        c.set_defaults(func=func)

    b = sub.add_parser("bound", help="evaluate the guarantee formula")
    b.add_argument("alpha", type=float)
    b.add_argument("gamma", type=float)
    b.add_argument("K", type=int)
    b.add_argument("Kprime", type=int, nargs="?")
    b.add_argument("--const", action="store_true", help="K-independent form")
    b.set_defaults(func=cmd_bound)

    t = sub.add_parser("tight", help="build the worst-case instance and check exactness")
    t.add_argument("K", type=int)
    t.add_argument("gamma", type=float)
    t.add_argument("alpha", type=float)
    t.add_argument("--dummies", type=int, default=0)
    t.set_defaults(func=cmd_tight)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScaleError as exc:
        print(f"scale error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except (ArgumentError, DegenerateInstanceError, UnboundedError, EvaluationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
