"""Command-line front end.

Exit codes: 0 success or verified, 1 verified false (or obstructed),
2 input error, 3 inconclusive at the requested order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import axis, geometry, operator, taylor
from .parse import ParseError, parse_expression
from .poly import Polynomial, default_names

OK, FALSE, INPUT_ERROR, INCONCLUSIVE = 0, 1, 2, 3
DEFAULT_MAX_ORDER = 20


class InputError(Exception):
    pass


def _default_order() -> int:
    raw = os.environ.get("MA_CLASSIFY_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"MA_CLASSIFY_MAX_ORDER={raw!r} is not an integer") from None


def report(command, inputs, outputs, status) -> dict:
    return {"schema": geometry.SCHEMA_VERSION, "command": command,
            "inputs": inputs, "outputs": outputs, "status": status}


def _is_poly_json(v) -> bool:
    return isinstance(v, dict) and set(v) == {"vars", "terms"}


def render_text(rep: dict) -> str:
    """Indented key/value dump; polynomial objects print in canonical text form."""
    lines: list[str] = []

    def walk(value, indent, key):
        pad = "  " * indent
        label = f"{key}: " if key is not None else "- "
        if _is_poly_json(value):
            lines.append(pad + label + Polynomial.from_json(value).to_string(value["vars"]))
        elif isinstance(value, dict):
            lines.append(pad + label.rstrip())
            for k, v in value.items():
                walk(v, indent + 1, k)
        elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
            lines.append(pad + label.rstrip())
            for v in value:
                walk(v, indent + 1, None)
        else:
            text = json.dumps(value) if not isinstance(value, str) else value
            lines.append(pad + label + text)

    for k, v in rep.items():
        walk(v, 0, k)
    return "\n".join(lines)


def _load_polynomial(source: str, names: list[str]) -> Polynomial:
    if source.startswith("@"):
        path = Path(source[1:])
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            P = Polynomial.from_json(data)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read polynomial from {path}: {exc}") from None
        return P
    try:
        return parse_expression(source, names)
    except ParseError as exc:
        raise InputError(f"parse error: {exc}") from None


def cmd_verify(args) -> tuple[dict, int]:
    names = args.vars.split(",") if args.vars else default_names(args.n)
    if len(names) != args.n:
        raise InputError(f"{len(names)} variable names given for n={args.n}")
    P = _load_polynomial(args.poly, names)
    if P.nvars != args.n:
        raise InputError(f"polynomial has {P.nvars} variables, expected n={args.n}")
    try:
        einstein = operator.EinsteinData(args.s, args.q, args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    inputs = {"poly": P.to_json(names), "s": args.s, "q": args.q, "n": args.n}
    if not operator.is_admissible(P):
        raise InputError("candidate is not admissible: need constant term 1, "
                         "coefficient 1 on each x_i, positive higher coefficients")
    cert = operator.mae_residual(P, einstein)
    out = cert.to_json()
    out["candidate"] = P.to_json(names)
    if "residual" in out:
        out["residual"] = cert.residual.to_json(names)
    return report("verify", inputs, out, "verified" if cert.verdict else "not a solution"), (
        OK if cert.verdict else FALSE)


def cmd_cauchy(args) -> tuple[dict, int]:
    try:
        data = axis.enumerate_cauchy_data(args.s)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return report("cauchy", {"s": args.s},
                  {"count": len(data), "data": [d.to_json() for d in data]}, "ok"), OK


def _order(args) -> int:
    return args.max_order if args.max_order is not None else _default_order()


def cmd_classify(args) -> tuple[dict, int]:
    H = _order(args)
    if args.s not in (1, 2, 3):
        raise InputError(f"s must be 1, 2 or 3, got {args.s}")
    if H < 4:
        raise InputError("max-order must be at least 4")
    result = taylor.classify_outcomes(args.s, H)
    known = {r.polynomial: r for r in geometry.catalog(2)}
    solutions = []
    for P in result.solutions:
        rec = known.get(P) or geometry.make_record(P, args.s, "unidentified")
        solutions.append(rec.to_json())
    data = [{"k": o.datum.k, "status": o.status.value} for o in result.outcomes]
    out = {"max_order": H, "count": len(solutions), "solutions": solutions,
           "cauchy_data": data,
           "note": f"complete among solutions whose x2-expansion ends by order {H}"}
    if result.resolved:
        return report("classify", {"s": args.s, "max_order": H}, out, "resolved"), OK
    return report("classify", {"s": args.s, "max_order": H}, out,
                  "inconclusive at this order"), INCONCLUSIVE


def cmd_propagate(args) -> tuple[dict, int]:
    H = _order(args)
    try:
        datum = axis.CauchyDatum(args.s, args.k)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if H < 2:
        raise InputError("max-order must be at least 2")
    outcome = taylor.propagate(datum, H)
    code = {taylor.Status.TERMINATED: OK, taylor.Status.OBSTRUCTED: FALSE,
            taylor.Status.OPEN: INCONCLUSIVE}[outcome.status]
    return report("propagate", {"s": args.s, "k": args.k, "max_order": H},
                  outcome.to_json(), outcome.status.value), code


def cmd_embed_dim(args) -> tuple[dict, int]:
    try:
        dims = [int(d) for d in args.dims.split(",")]
        out = geometry.embedding_for(dims, args.q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return report("embed-dim", {"dims": dims, "q": args.q}, out, "ok"), OK


def cmd_catalog(args) -> tuple[dict, int]:
    data = geometry.catalog_json()
    if args.output:
        geometry.write_catalog(args.output)
    return report("catalog", {"output": args.output}, data, "ok"), OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ma-kahler",
        description="Exact polynomial solutions of rotation-invariant Kahler-Einstein "
                    "Monge-Ampere equations.")
    parser.add_argument("--emit", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def emit_flag(p):
        p.add_argument("--emit", choices=["text", "json"], default=argparse.SUPPRESS)

    p = sub.add_parser("verify", help="check D_n(P)^q = P^(q(n+1)-s)")
    p.add_argument("-p", "--poly", required=True, help="expression, or @file.json")
    p.add_argument("-s", "--s", type=int, required=True)
    p.add_argument("-q", "--q", type=int, default=1)
    p.add_argument("-n", "--n", type=int, default=2)
    p.add_argument("--vars", help="comma-separated variable names (default x1..xn)")
    emit_flag(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cauchy", help="list Cauchy data for s")
    p.add_argument("-s", "--s", type=int, required=True)
    emit_flag(p)
    p.set_defaults(func=cmd_cauchy)

    p = sub.add_parser("classify", help="classify normal-form solutions for s")
    p.add_argument("-s", "--s", type=int, required=True)
    p.add_argument("--max-order", type=int, default=None)
    emit_flag(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("propagate", help="propagate one Cauchy datum")
    p.add_argument("-s", "--s", type=int, required=True)
    p.add_argument("-k", "--k", type=int, required=True)
    p.add_argument("--max-order", type=int, default=None)
    emit_flag(p)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("embed-dim", help="embedding dimension of a product of CP^n")
    p.add_argument("-n", "--dims", required=True, help="comma-separated factor dimensions")
    p.add_argument("-q", "--q", type=int, default=1)
    emit_flag(p)
    p.set_defaults(func=cmd_embed_dim)

    p = sub.add_parser("catalog", help="print (and optionally write) the solution catalog")
    p.add_argument("-o", "--output")
    emit_flag(p)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        rep, code = args.func(args)
    except InputError as exc:
        rep = report(args.command, {}, {"error": str(exc)}, "input error")
        code = INPUT_ERROR
    if args.emit == "json":
        sys.stdout.write(json.dumps(rep, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render_text(rep) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
