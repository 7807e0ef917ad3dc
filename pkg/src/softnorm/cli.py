"""Command-line driver.

Exit codes: 0 when every requested check passes, 1 when a suite reports
violations, 2 on unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from itertools import product

from .controls import (
    bounded_metric, discrete_metric, no_abs_norm, signed_parameter_metric, squared_metric,
    squared_norm,
)
from .core import SoftStructureError
from .norms import (
    CanonicalSoftNorm, InducedMetric, verify_metric_axioms, verify_metric_norm_compatibility,
    verify_norm_axioms,
)
from .operators import SoftLinearOperator, check_linearity, verify_bounded
from .opnorm import (
    OpNormConfig, escalate_op_norm, grid_op_norm, op_norm, verify_opnorm_axioms,
    verify_power_bound, verify_submultiplicative,
)
from .sampling import SoftVectorSampler
from .sequences import check_convergent_implies_cauchy, seq_converges_to, seq_is_cauchy, \
    sequence_from_spec
from .vectors import SoftVector, independence_diagnostic

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
NORM_SPECS = ("canonical", "no-abs", "squared")
METRIC_SPECS = ("induced", "bounded", "squared", "discrete", "signed")
OPERATOR_SUITES = ("ratio", "bounded", "linearity", "opnorm-axioms", "submultiplicative",
                   "power", "all")
ORACLE_GAP = 1e-3
VECTOR_TOL, OPERATOR_TOL = 1e-9, 1e-6


class InputError(Exception):
    pass


def _p_value(text: str) -> float:
    if text == "inf":
        return math.inf
    if text in ("1", "2"):
        return float(text)
    raise argparse.ArgumentTypeError("p must be one of 1, 2, inf")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=10_000)
    parser.add_argument("--tol", type=float, default=None,
                        help="default 1e-9 for norm/metric suites, 1e-6 for operator suites")
    parser.add_argument("--p", type=_p_value, default=2.0)
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--out", default=None, help="write output here instead of stdout")


def _effort(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--starts", type=int, default=16)
    parser.add_argument("--iterations", type=int, default=200)
    parser.add_argument("--grid-resolution", type=float, default=1e-3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="softnorm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run axiom and theorem suites")
    subject = verify.add_mutually_exclusive_group(required=True)
    subject.add_argument("--norm", choices=NORM_SPECS)
    subject.add_argument("--metric", choices=METRIC_SPECS)
    subject.add_argument("--operator", metavar="FILE")
    verify.add_argument("--suite", choices=OPERATOR_SUITES, default="all")
    verify.add_argument("--dim", type=int, default=2)
    verify.add_argument("--power", type=int, default=5, help="largest power for the power suite")
    _common(verify)
    _effort(verify)

    opn = sub.add_parser("opnorm", help="estimate an operator norm")
    opn.add_argument("operator", metavar="FILE")
    opn.add_argument("--oracle", action="store_true")
    _common(opn)
    _effort(opn)

    indep = sub.add_parser("indep", help="linear independence of soft vectors")
    indep.add_argument("vectors", metavar="FILE")
    indep.add_argument("--rank-tol", type=float, default=1e-10)
    _common(indep)

    seq = sub.add_parser("sequence", help="convergence and Cauchy diagnostics")
    seq.add_argument("spec", metavar="FILE")
    seq.add_argument("--eps", type=float, default=1e-2)
    seq.add_argument("--horizon", type=int, default=1000)
    _common(seq)
    return parser


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_operators(path: str) -> list[SoftLinearOperator]:
    data = _load_json(path)
    items = data if isinstance(data, list) else [data]
    if not items:
        raise InputError(f"{path}: no operators")
    try:
        return [SoftLinearOperator.from_dict(item) for item in items]
    except (SoftStructureError, AttributeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _cfg(args) -> OpNormConfig:
    try:
        return OpNormConfig(starts=args.starts, iterations=args.iterations,
                            grid_resolution=args.grid_resolution, seed=args.seed)
    except SoftStructureError as exc:
        raise InputError(str(exc)) from exc


def _check_run_args(args) -> None:
    if args.tol is None:
        args.tol = OPERATOR_TOL if getattr(args, "operator", None) else VECTOR_TOL
    if args.samples < 1:
        raise InputError("--samples must be >= 1")
    if not args.tol > 0:
        raise InputError("--tol must be positive")
    if getattr(args, "dim", 1) < 1:
        raise InputError("--dim must be >= 1")


def _norm_for(spec: str, p: float):
    return {"canonical": lambda: CanonicalSoftNorm(p), "no-abs": no_abs_norm,
            "squared": lambda: squared_norm(p)}[spec]()


def _metric_for(spec: str, p: float):
    base = CanonicalSoftNorm(p)
    return {"induced": lambda: InducedMetric(base),
            "bounded": lambda: bounded_metric(InducedMetric(base)),
            "squared": lambda: squared_metric(base),
            "discrete": discrete_metric,
            "signed": signed_parameter_metric}[spec]()


def _operator_reports(args, ops):
    norm = CanonicalSoftNorm(args.p)
    cfg = _cfg(args)
    suites = OPERATOR_SUITES[:-1] if args.suite == "all" else (args.suite,)
    for suite in suites:
        if suite in ("ratio", "bounded", "linearity"):
            for T in ops:
                sampler = SoftVectorSampler(T.in_dim)
                if suite == "linearity":
                    yield check_linearity(T, sampler, args.samples, args.tol, args.seed)
                    continue
                result, ratio = escalate_op_norm(T, norm, norm, sampler, args.samples,
                                                 args.tol, cfg, args.seed)
                if suite == "ratio":
                    yield ratio
                else:
                    yield verify_bounded(T, result.value, norm, norm, sampler, args.samples,
                                         args.tol, args.seed, witnesses=[result.maximizer])
        elif suite == "opnorm-axioms":
            yield verify_opnorm_axioms(ops, norm, cfg, args.tol)
        elif suite == "submultiplicative":
            for S, T in product(ops, ops):
                if S.in_dim == T.out_dim:
                    yield verify_submultiplicative(S, T, norm, cfg, args.tol)
        elif suite == "power":
            for T in ops:
                if T.in_dim == T.out_dim and args.power >= 2:
                    yield verify_power_bound(T, args.power, norm, cfg, args.tol)


def _verify(args) -> tuple[list[dict], int]:
    _check_run_args(args)
    if args.operator:
        reports = list(_operator_reports(args, _load_operators(args.operator)))
    else:
        sampler = SoftVectorSampler(args.dim)
        if args.norm:
            norm = _norm_for(args.norm, args.p)
            reports = [verify_norm_axioms(norm, sampler, args.samples, args.tol, args.seed)]
        else:
            metric = _metric_for(args.metric, args.p)
            reports = [verify_metric_axioms(metric, sampler, args.samples, args.tol, args.seed),
                       verify_metric_norm_compatibility(metric, sampler, args.samples,
                                                        args.tol, args.seed)]
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION
    return [r.to_dict() for r in reports], code


def _opnorm(args) -> tuple[list[dict], int]:
    ops = _load_operators(args.operator)
    if len(ops) != 1:
        raise InputError("opnorm expects a single operator")
    T = ops[0]
    norm = CanonicalSoftNorm(args.p)
    cfg = _cfg(args)
    result = op_norm(T, norm, norm, cfg)
    out = result.to_dict()
    code = EXIT_OK
    if args.oracle:
        if T.in_dim + 1 > 3:
            raise InputError("--oracle needs lifted input dimension <= 3")
        oracle = grid_op_norm(T, norm, norm, args.grid_resolution)
        gap = oracle.value - result.value
        out["certificate_gap"] = gap
        if gap > ORACLE_GAP * max(oracle.value, 1.0):
            code = EXIT_VIOLATION
    return [out], code


def _indep(args) -> tuple[list[dict], int]:
    data = _load_json(args.vectors)
    if not isinstance(data, list) or not data:
        raise InputError("expected a non-empty JSON array of soft vectors")
    try:
        vecs = [SoftVector.from_dict(item) for item in data]
        diag = independence_diagnostic(vecs, args.rank_tol)
    except (SoftStructureError, AttributeError) as exc:
        raise InputError(str(exc)) from exc
    diag["verdict"] = "independent" if diag["independent"] else "dependent"
    return [diag], EXIT_OK


def _sequence(args) -> tuple[list[dict], int]:
    spec = _load_json(args.spec)
    if not isinstance(spec, dict):
        raise InputError("sequence spec must be a JSON object")
    if not args.eps > 0 or args.horizon < 1:
        raise InputError("--eps must be positive and --horizon >= 1")
    try:
        seq = sequence_from_spec(spec)
    except SoftStructureError as exc:
        raise InputError(str(exc)) from exc
    norm = CanonicalSoftNorm(args.p)
    target = seq.declared_limit if seq.declared_limit is not None else \
        SoftVector.from_dict(spec["base"])
    conv = seq_converges_to(seq, target, norm, args.eps, args.horizon)
    cauchy = seq_is_cauchy(seq, norm, args.eps, args.horizon)
    report = check_convergent_implies_cauchy(seq, target, norm, args.eps, args.horizon)
    out = {"kind": seq.kind, "eps": args.eps, "horizon": args.horizon,
           "convergence": conv.to_dict(), "cauchy": cauchy.to_dict(),
           "implication": report.to_dict()}
    return [out], EXIT_OK if report.passed else EXIT_VIOLATION


COMMANDS = {"verify": _verify, "opnorm": _opnorm, "indep": _indep, "sequence": _sequence}


def _render_text(obj: dict) -> str:
    if "suite" in obj:
        status = "PASS" if obj["violations"] == 0 else "FAIL"
        return (f"[{status}] {obj['suite']}: {obj['samples']} samples, "
                f"{obj['violations']} violations, max violation {obj['max_violation']} "
                f"(tol {obj['tolerance']}, seed {obj['seed']})")
    return "\n".join(f"{k}: {json.dumps(v)}" for k, v in obj.items())


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        objects, code = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"softnorm: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        text = "\n".join(json.dumps(o) for o in objects) + "\n"
    else:
        text = "\n".join(_render_text(o) for o in objects) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
