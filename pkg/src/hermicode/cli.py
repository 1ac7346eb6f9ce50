"""Command-line front end: ``hermicode {verify,code,field-info,sum}``.

Exit codes: 0 success, 1 theorem mismatch, 2 configuration error,
3 enumeration budget exceeded.  Reports are sorted-key JSON by default, so
identical arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .codes import (
    BudgetExceeded,
    CodeParams,
    build_C,
    build_gamma,
    c_formula,
    compare,
    comparison_formulas,
    default_budget,
    gamma_formula,
    jsonable,
    rm_params,
    weight_distribution,
)
from .counting import TheoremMismatch, brute_S, closed_S
from .gf import SubfieldError, TowerError, TowerSpec, build_tower
from .hermitian import HermitianForm, NotHermitianError
from .quadform import QuadHermForm, standard_form
from .verify import run_verify

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _tower_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    g = parent.add_argument_group("tower")
    g.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    g.add_argument("--a", type=int, default=1, help="s = p^a")
    g.add_argument("--b", type=int, default=1, help="t = s^b")
    g.add_argument("--N", type=int, default=1, help="hermitian forms live on F_{t^2}^N")
    out = parent.add_argument_group("output")
    out.add_argument("--output", "-o", type=Path, help="write the report here instead of stdout")
    out.add_argument("--format", choices=("json", "csv", "text"), default="json")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hermicode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _tower_parent()

    v = sub.add_parser("verify", parents=[parent], help="closed forms against brute force for one tower")
    v.add_argument("--variants", type=int, default=10, help="random changes of basis per rank")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--threads", type=int, default=1)

    c = sub.add_parser("code", parents=[parent], help="enumerate Gamma or C, or compare with Reed-Muller")
    c.add_argument("which", choices=("gamma", "c", "compare"))
    c.add_argument("--budget", type=int, default=None, help="max s^K * n work (env HERMICODE_BUDGET)")
    c.add_argument("--threads", type=int, default=1, help="accepted for symmetry; enumeration is vectorized")

    sub.add_parser("field-info", parents=[parent], help="modulus, generator and subfield data")

    s = sub.add_parser("sum", parents=[parent], help="one exponential sum S(c f, v)")
    s.add_argument("--rho", type=int, default=None, help="rank of the standard form (default N)")
    s.add_argument("--hermitian", type=str, default=None, help="JSON N x N matrix of encodings instead of --rho")
    s.add_argument("--v", type=_int_list, default=None, help="comma-separated encodings of v in F_t^{2N}")
    s.add_argument("--scalar", type=int, default=1, help="c in F_s*")
    return parser


# -- rendering ----------------------------------------------------------------------


def _dump_json(report) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"


def _text(report, indent: str = "") -> str:
    lines = []
    for key in sorted(report):
        val = report[key]
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_text(val, indent + "  ").rstrip("\n"))
        else:
            lines.append(f"{indent}{key}: {json.dumps(jsonable(val), sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _render(report: dict, fmt: str, csv_text: str | None = None) -> str:
    if fmt == "json":
        return _dump_json(report)
    if fmt == "csv":
        if csv_text is None:
            raise ConfigError("csv output is only available for code gamma / code c")
        return csv_text
    return _text(jsonable(report))


# -- commands ---------------------------------------------------------------------


def _spec(args) -> TowerSpec:
    return TowerSpec(args.p, args.a, args.b, args.N)


def cmd_field_info(args) -> tuple[int, dict]:
    ctx = build_tower(_spec(args))
    info = ctx.to_dict()
    info["q"] = ctx.q
    info["generators"] = {tag: ctx.generator(tag) for tag in ("p", "s", "t", "t2")}
    info["basis_t_over_s"] = ctx.basis_over("t", "s").tolist()
    return EXIT_OK, info


def cmd_verify(args) -> tuple[int, dict]:
    if args.variants < 0 or args.threads < 1:
        raise ConfigError("--variants must be >= 0 and --threads >= 1")
    ctx = build_tower(_spec(args))
    report = run_verify(ctx, variants=args.variants, seed=args.seed, threads=args.threads)
    return (EXIT_OK if report["ok"] else EXIT_MISMATCH), report


def _formula_check(params: CodeParams, formula: dict) -> dict:
    got = {"n": params.n, "k": params.k, "d_min": params.d_min, "w_max": params.w_max, "disparity": params.disparity}
    return {key: {"enumerated": got[key], "formula": formula[key], "match": got[key] == formula[key]} for key in formula}


def _code_report(ctx, which: str, budget: int) -> tuple[int, dict, CodeParams]:
    code = build_gamma(ctx) if which == "gamma" else build_C(ctx)
    formula = (gamma_formula if which == "gamma" else c_formula)(ctx.s, ctx.t, ctx.spec.N)
    params = weight_distribution(code, budget=budget)
    check = _formula_check(params, formula)
    # n and K must match; d_min, w_max and disparity match exactly when the bounds are attained
    status = EXIT_OK if check["n"]["match"] and check["k"]["match"] and code.rank() == code.k else EXIT_MISMATCH
    report = {"tower": ctx.to_dict(), "code": params.to_dict(), "formula_check": check, "generator_rank": code.rank()}
    return status, report, params


def cmd_code(args) -> tuple[int, dict, str | None]:
    ctx = build_tower(_spec(args))
    budget = default_budget() if args.budget is None else args.budget
    if args.which in ("gamma", "c"):
        status, report, params = _code_report(ctx, args.which, budget)
        return status, report, params.distribution_csv()

    sg, rg, pg = _code_report(ctx, "gamma", budget)
    sc, rc, pc = _code_report(ctx, "c", budget)
    rm = rm_params(ctx.spec.N, ctx.t)
    report = {
        "tower": ctx.to_dict(),
        "codes": {"Gamma": rg["code"], "C": rc["code"], "RM": {"n": rm.n, "k": rm.k, "d_min": rm.d_min, "lambda": rm.lam}},
        "Gamma_vs_RM": compare(pg, rm),
        "C_vs_RM": compare(pc, rm),
        "Gamma_vs_C": compare(pg, pc),
    }
    status = max(sg, sc)
    if ctx.s == ctx.t:
        formulas = comparison_formulas(ctx.t, ctx.spec.N)
        got = {
            "gamma_d_diff": report["Gamma_vs_RM"]["d_diff"],
            "gamma_rate_diff": report["Gamma_vs_RM"]["rate_diff"],
            "gamma_lambda_diff": report["Gamma_vs_RM"]["lambda_diff"],
            "c_d_diff": report["C_vs_RM"]["d_diff"],
            "c_rate_diff": report["C_vs_RM"]["rate_diff"],
        }
        report["identities"] = {k: {"enumerated": got[k], "formula": formulas[k], "match": got[k] == formulas[k]} for k in formulas}
        if not all(v["match"] for v in report["identities"].values()):
            status = EXIT_MISMATCH
    csv_lines = ["code,n,k,d_min,w_max"]
    for label, p in (("Gamma", pg), ("C", pc), ("RM", rm)):
        csv_lines.append(f"{label},{p.n},{p.k},{p.d_min},{'' if p.w_max is None else p.w_max}")
    return status, report, "\n".join(csv_lines) + "\n"


def _sum_form(ctx, args) -> QuadHermForm:
    N = args.N
    if args.hermitian is not None:
        try:
            m = np.array(json.loads(args.hermitian), dtype=np.int64)
        except (json.JSONDecodeError, ValueError) as exc:
            raise ConfigError(f"--hermitian is not a JSON integer matrix: {exc}") from None
        if m.shape != (N, N):
            raise ConfigError(f"--hermitian must be {N} x {N}")
        ctx.check_in(m, "t2")
        return QuadHermForm.from_hermitian(HermitianForm(ctx, m))
    rho = N if args.rho is None else args.rho
    if not 0 <= rho <= N:
        raise ConfigError(f"--rho must lie in [0, {N}]")
    return standard_form(ctx, N, rho)


def cmd_sum(args) -> tuple[int, dict]:
    ctx = build_tower(_spec(args))
    q = _sum_form(ctx, args)
    v = np.zeros(q.dim, dtype=np.int64) if args.v is None else np.array(args.v, dtype=np.int64)
    if v.shape != (q.dim,):
        raise ConfigError(f"--v needs {q.dim} coordinates")
    if args.scalar == 0:
        raise ConfigError("--scalar must be nonzero")
    brute = brute_S(q, v, args.scalar)
    closed = closed_S(q, v, args.scalar)
    report = {
        "tower": ctx.to_dict(),
        "H": q.H.to_list(),
        "rho": q.rho,
        "v": v.tolist(),
        "scalar": args.scalar,
        "brute_force": brute.to_list(),
        "closed_form": closed.to_list(),
        "integer_value": int(brute) if brute.is_integer() else None,
        "match": brute == closed,
    }
    return (EXIT_OK if report["match"] else EXIT_MISMATCH), report


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    csv_text = None
    try:
        if args.command == "verify":
            status, report = cmd_verify(args)
        elif args.command == "code":
            status, report, csv_text = cmd_code(args)
        elif args.command == "field-info":
            status, report = cmd_field_info(args)
        else:
            status, report = cmd_sum(args)
        _emit(_render(report, args.format, csv_text), args.output)
    except (TowerError, SubfieldError, NotHermitianError, ConfigError) as exc:
        print(f"hermicode: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(f"hermicode: {exc}; raise --budget or HERMICODE_BUDGET", file=sys.stderr)
        return EXIT_BUDGET
    except TheoremMismatch as exc:
        print(f"hermicode: theorem mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
