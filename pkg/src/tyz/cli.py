"""Command-line front end.

Every subcommand builds a report ``{schema_version, command, inputs, results,
status}`` and writes it as JSON (default) or CSV. Exit codes: 0 ok, 1 error,
2 violation of a lemma/theorem check (never expected).

    tyz list-domains --max-dim 30
    tyz coeffs --domain I:2,2
    tyz verify inequality --r-max 20 --a-max 20 --b-max 20
    tyz curvature --potential "norm2(z)+log(norm2(z))" --dim 2 --point 1,0
    tyz recursion calibrate --model disk --R 4
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import algebra, curvature, domains, kempf, recursion
from .algebra import TheoremViolation
from .potential import ExpressionError, parse_potential

SCHEMA_VERSION = "1.0"

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema_version", "command", "inputs", "results", "status"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "results": {
            "type": "object",
            "properties": {"rows": {"type": "array", "items": {"type": "object"}}},
        },
        "status": {"enum": ["ok", "violation", "error"]},
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for violations here
    def error(self, message):
        raise UsageError(message)


def frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return frac(obj)
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def _parse_domain(args) -> tuple[domains.DomainInvariants, domains.CartanDescriptor | None]:
    if args.domain and args.rab:
        raise UsageError("give either --domain or --rab, not both")
    if args.domain:
        desc = domains.parse_descriptor(args.domain)
        return domains.invariants_of(desc), desc
    if args.rab:
        try:
            r, a, b = (int(v) for v in args.rab.split(","))
        except ValueError as exc:
            raise UsageError(f"--rab expects r,a,b integers, got {args.rab!r}") from exc
        return domains.DomainInvariants(r, a, b), None
    raise UsageError("one of --domain or --rab is required")


def _domain_inputs(inv, desc) -> dict:
    out: dict = {"domain": str(desc)} if desc is not None else {}
    out.update(r=inv.r, a=inv.a, b=inv.b, genus=inv.genus, dimension=inv.dimension)
    return out


def cmd_list_domains(args) -> dict:
    return {"rows": domains.catalog_table(args.max_dim)}


def cmd_coeffs(args) -> dict:
    inv, desc = _parse_domain(args)
    poly = kempf.kempf_polynomial(inv)
    seq = kempf.coefficients(poly)
    cf = algebra.closed_form(inv)
    return {
        "invariants": _domain_inputs(inv, desc),
        "polynomial": poly.to_json(),
        "coefficients": list(seq),
        "closed_form": {"a1": cf.a1, "a2": cf.a2, "q": cf.q, "defect": cf.defect},
        "closed_form_agrees": seq.get(1) == cf.a1 and seq.get(2) == cf.a2,
        "rows": [{"j": j, "a_j": v} for j, v in enumerate(seq)],
    }


def cmd_dual(args) -> dict:
    inv, desc = _parse_domain(args)
    seq = kempf.kempf_coefficients(inv)
    dual = algebra.dualize(seq)
    prod = algebra.odd_vanishing_check(inv)
    return {
        "invariants": _domain_inputs(inv, desc),
        "coefficients": list(seq),
        "dual_coefficients": list(dual),
        "product_coefficients": list(prod),
        "odd_entries_vanish": True,
        "rows": [{"j": j, "a_j": seq[j], "a_j_dual": dual[j]} for j in range(len(seq))],
    }


def _verdict(v: algebra.FlatnessVerdict) -> dict:
    return {
        "flat": v.flat,
        "c1": v.c1,
        "c2": v.c2,
        "identity_checked": v.identity_checked,
        "defect_sum": v.defect_sum,
    }


def cmd_product(args) -> dict:
    if not args.spec:
        raise UsageError("--spec FILE.json is required")
    spec = algebra.LhssSpec.load(args.spec)
    seq = algebra.lhss_coefficients(spec)
    return {
        "spec": spec.to_json(),
        "dimension": spec.dimension,
        "coefficients": list(seq),
        "certificate": _verdict(algebra.flatness_certificate(spec)),
        "rows": [{"j": j, "c_j": v} for j, v in enumerate(seq)],
    }


def cmd_verify_inequality(args) -> dict:
    sweep = algebra.inequality_sweep(args.r_max, args.a_max, args.b_max)
    rows = [
        {"r": inv.r, "a": inv.a, "b": inv.b, "a1": rep.a1, "a2": rep.a2, "q": rep.q, "defect": rep.defect}
        for inv, rep in sweep.rows
    ]
    return {
        "cases": len(rows),
        "all_negative": True,
        "reduced_inequality_holds": True,
        "max_defect": sweep.max_defect,
        "max_defect_at": list(sweep.argmax.as_tuple()),
        "rows": rows,
    }


EXAMPLE_2_5 = algebra.LhssSpec(
    (algebra.LhssFactor(domains.DomainInvariants(1, 2, 0), dual=True),), flat_dim=1
)


def cmd_verify_theorem1(args) -> dict:
    if args.spec:
        specs = [algebra.LhssSpec.load(args.spec)]
    else:
        rng = random.Random(args.seed)
        specs = [algebra.random_lhss_spec(rng, balanced=bool(i % 2)) for i in range(args.samples)]
    rows = []
    for i, spec in enumerate(specs):
        v = algebra.flatness_certificate(spec)
        rows.append(
            {
                "index": i,
                "factors": len(spec.factors),
                "flat_dim": spec.flat_dim,
                "dimension": spec.dimension,
                "c1": v.c1,
                "c2": v.c2,
                "identity_checked": v.identity_checked,
            }
        )
    example = algebra.lhss_coefficients(EXAMPLE_2_5).padded(4)
    if example != (1, 1, 0, 0):
        raise TheoremViolation(f"C x CP^1 gives {example}, expected (1, 1, 0, 0)")
    return {
        "cases": len(rows),
        "identity_cases": sum(r["identity_checked"] for r in rows),
        "example_c_times_cp1": list(example),
        "rows": rows,
    }


def cmd_verify_theorem2(args) -> dict:
    if args.domain or args.rab:
        targets = [_parse_domain(args)]
    else:
        targets = [(domains.invariants_of(d), d) for d in domains.catalog(args.max_dim)]
    rows = []
    for inv, desc in targets:
        prod = algebra.odd_vanishing_check(inv)
        row = {"domain": str(desc) if desc else "", "r": inv.r, "a": inv.a, "b": inv.b}
        row.update(dimension=inv.dimension, product_length=len(prod), odd_entries_vanish=True)
        rows.append(row)
    return {"cases": len(rows), "rows": rows}


def _parse_point(text: str) -> list[complex]:
    try:
        return [complex(c.strip().replace(" ", "")) for c in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse point {text!r}") from exc


def cmd_curvature(args) -> dict:
    if not args.potential or not args.point:
        raise UsageError("--potential and --point are required")
    phi = parse_potential(args.potential, args.dim)
    rows = [curvature.curvature_row(curvature.curvature_at(phi, _parse_point(p), args.order)) for p in args.point]
    return {"rows": rows}


def cmd_recursion_calibrate(args) -> dict:
    conventions = recursion.CONVENTIONS if args.convention == "both" else (args.convention,)
    D = None
    model = args.model
    if args.series:
        coeffs = [Fraction(c.strip()) for c in args.series.split(",")]
        D = recursion.RadialJet(tuple(coeffs), len(coeffs) - 1)
        model = args.model or "custom"
    elif not model:
        raise UsageError("one of --model or --series is required")
    rows = recursion.calibrate(model, args.R, conventions, D)
    return {
        "model": model,
        "R": args.R,
        "matches": {c: all(r["match"] for r in rows if r["convention"] == c) for c in conventions}
        if model in recursion.MODELS
        else None,
        "rows": rows,
    }


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tyz", description="TYZ coefficients of locally Hermitian symmetric spaces")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    dom = _Parser(add_help=False)
    dom.add_argument("--domain", help="Cartan descriptor, e.g. I:2,3 or IV:5 or V")
    dom.add_argument("--rab", help="numerical invariants r,a,b")

    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    s = sub.add_parser("list-domains", parents=[common])
    s.add_argument("--max-dim", type=int, default=30)
    s.set_defaults(func=cmd_list_domains)
    sub.add_parser("coeffs", parents=[common, dom]).set_defaults(func=cmd_coeffs)
    sub.add_parser("dual", parents=[common, dom]).set_defaults(func=cmd_dual)
    s = sub.add_parser("product", parents=[common])
    s.add_argument("--spec")
    s.set_defaults(func=cmd_product)

    v = sub.add_parser("verify").add_subparsers(dest="check", parser_class=_Parser)
    s = v.add_parser("inequality", parents=[common])
    for flag in ("--r-max", "--a-max", "--b-max"):
        s.add_argument(flag, type=int, default=20)
    s.set_defaults(func=cmd_verify_inequality, command="verify inequality")
    s = v.add_parser("theorem1", parents=[common])
    s.add_argument("--spec")
    s.add_argument("--samples", type=int, default=500)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify_theorem1, command="verify theorem1")
    s = v.add_parser("theorem2", parents=[common, dom])
    s.add_argument("--max-dim", type=int, default=30)
    s.set_defaults(func=cmd_verify_theorem2, command="verify theorem2")

    s = sub.add_parser("curvature", parents=[common])
    s.add_argument("--potential")
    s.add_argument("--dim", type=int, default=1)
    s.add_argument("--point", action="append", help="comma-separated complex coordinates; repeatable")
    s.add_argument("--order", type=int, default=6)
    s.set_defaults(func=cmd_curvature)

    r = sub.add_parser("recursion").add_subparsers(dest="action", parser_class=_Parser)
    s = r.add_parser("calibrate", parents=[common])
    s.add_argument("--model", choices=recursion.MODELS)
    s.add_argument("--series", help="diastasis coefficients d0,d1,... as rationals")
    s.add_argument("--R", type=int, default=4)
    s.add_argument("--convention", choices=("variable", "base", "both"), default="both")
    s.set_defaults(func=cmd_recursion_calibrate, command="recursion calibrate")
    return p


def _inputs(args) -> dict:
    skip = {"func", "command", "check", "action", "format", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv: Sequence[str]) -> tuple[dict, int, str]:
    """Parse and dispatch; returns ``(report, exit_code, format)``."""
    fmt = "json"
    command = " ".join(argv[:1]) if argv else ""
    inputs: dict = {"argv": list(argv)}
    try:
        args = build_parser().parse_args(list(argv))
        if not hasattr(args, "func"):
            raise UsageError("a subcommand is required")
        fmt, command, inputs = args.format, args.command, _inputs(args)
        results, status, code = args.func(args), "ok", 0
    except TheoremViolation as exc:
        results, status, code = {"message": str(exc)}, "violation", 2
    except (UsageError, ValueError, ArithmeticError, OSError, ExpressionError, KeyError) as exc:
        results, status, code = {"message": f"{type(exc).__name__}: {exc}"}, "error", 1
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": jsonable(inputs),
        "results": jsonable(results),
        "status": status,
    }
    return report, code, fmt


def emit(report: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    rows = report["results"].get("rows") if isinstance(report.get("results"), dict) else None
    if not rows:
        raise ValueError(f"command {report['command']!r} has no tabular payload for CSV")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
    return buf.getvalue().encode("utf-8")


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    report, code, fmt = run(argv)
    if code != 0:
        fmt = "json"
    try:
        data = emit(report, fmt)
    except ValueError as exc:
        report = {**report, "results": {"message": str(exc)}, "status": "error"}
        data, code = emit(report, "json"), 1
    out = next((argv[i + 1] for i, a in enumerate(argv[:-1]) if a == "--out"), None)
    if out and code == 0:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
