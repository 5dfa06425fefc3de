"""The ``tk`` command line."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .cpring import BetaPoly, fgl_identity_check, format_beta, inject_fault, multiply, n_series, truncate_ring
from .kk import KKElement, NotIntegral, conjugate, decompose, epsilon, format_decomposition, membership
from .parsing import ParseError
from .selftest import DEPTHS, run_selftest
from .tor import NotAComplex, ResolutionError, tor_report
from .twist import (DocumentError, MalformedPresentation, group_document, parse_presentation,
                    twisted_k)

OK, NEGATIVE, INPUT_ERROR, INTERNAL_ERROR = 0, 1, 2, 3
DEFAULT_TRUNCATION = 8


class InputError(Exception):
    pass


class ConsistencyError(Exception):
    pass


@dataclass
class CommandResult:
    code: int
    text: str
    data: dict = field(default_factory=dict)

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.data, indent=2, sort_keys=True) + "\n"
        return self.text + "\n"


def _read_presentation(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_presentation(text)
    except (DocumentError, MalformedPresentation) as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_kk(text: str) -> KKElement:
    try:
        return KKElement.parse(text)
    except ParseError as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- commands ---------------------------------------------------------------------

def cmd_twist(args) -> CommandResult:
    p = _read_presentation(args.file)
    group = twisted_k(p)
    groups, _ = _tor_groups(p, 0, "free", None)
    tor0 = groups[0]
    if tor0 != group.to_json():
        raise ConsistencyError(f"twisted K {group} disagrees with Tor_0 {tor0}")
    return CommandResult(OK, str(group), json.loads(group_document(group)))


def cmd_kk(args) -> CommandResult:
    f = _parse_kk(args.expr)
    if args.action == "member":
        ok, witness = membership(f)
        if ok:
            return CommandResult(OK, "yes", {"member": True})
        data = {"member": False, "witness": {"k": witness.k, "degree": witness.degree,
                                             "value": str(witness.value)}}
        return CommandResult(NEGATIVE, f"no\nwitness: {witness}", data)
    if args.action == "decompose":
        try:
            coeffs = decompose(f)
        except NotIntegral as exc:
            return CommandResult(NEGATIVE, f"not a member: {exc}", {"member": False})
        data = {"terms": [{"index": i, "coeff": str(a)} for i, a in sorted(coeffs.items())]}
        return CommandResult(OK, format_decomposition(coeffs), data)
    if args.action == "eps":
        try:
            value = epsilon(f)
        except NotIntegral as exc:
            return CommandResult(NEGATIVE, f"not a member: {exc}", {"member": False})
        return CommandResult(OK, str(value), {"value": str(value)})
    value = conjugate(f)
    return CommandResult(OK, str(value), {"value": str(value)})


def cmd_fgl(args) -> CommandResult:
    if args.action == "nseries":
        if args.n < 0:
            raise InputError("N must be nonnegative")
        if args.order < 1:
            raise InputError("--order must be positive")
        series = n_series(args.n, args.order)
        return CommandResult(OK, str(series), {"n": args.n, "order": args.order, "series": str(series)})
    if args.order < 1:
        raise InputError("--order must be positive")
    if args.m is not None and args.m < 1:
        raise InputError("--m must be positive")
    report = fgl_identity_check(args.m, args.order)
    data = {"identity": report.name, "order": report.order, "passed": report.passed,
            "coefficients_checked": report.checked}
    if not report.passed:
        e, lhs, rhs = report.first_difference
        data["first_difference"] = {"exponents": list(e), "lhs": str(lhs), "rhs": str(rhs)}
    return CommandResult(OK if report.passed else NEGATIVE, str(report), data)


def cmd_cp(args) -> CommandResult:
    if args.i < 0 or args.j < 0:
        raise InputError("b-indices must be nonnegative")
    product = multiply(BetaPoly.beta(args.i), BetaPoly.beta(args.j))
    if args.trunc is not None:
        if args.trunc < 1:
            raise InputError("--trunc must be at least 1")
        product = truncate_ring(args.trunc).reduce(product)
    text = format_beta(product)
    return CommandResult(OK, text, {"i": args.i, "j": args.j, "truncation": args.trunc, "product": text})


def _tor_groups(p, s_max, mode, trunc):
    try:
        report = tor_report(p, s_max, mode, trunc)
    except MalformedPresentation as exc:
        raise InputError(str(exc)) from None
    except (NotAComplex, ResolutionError) as exc:
        raise ConsistencyError(str(exc)) from None
    return [{"parity0": row["parity0"], "parity1": row["parity1"]} for row in report["tor"]], report


def cmd_tor(args) -> CommandResult:
    if args.max_s < 0:
        raise InputError("--max-s must be nonnegative")
    if args.trunc is not None and args.trunc < 1:
        raise InputError("--trunc must be at least 1")
    p = _read_presentation(args.file)
    groups, report = _tor_groups(p, args.max_s, args.mode, args.trunc)
    if groups[0] != twisted_k(p).to_json():
        raise ConsistencyError(f"Tor_0 {groups[0]} disagrees with twisted K {twisted_k(p)}")
    text = json.dumps(report, indent=2, sort_keys=True)
    return CommandResult(OK, text, report)


def cmd_selftest(args) -> CommandResult:
    if args.inject_fault:
        try:
            parts = [int(x) for x in args.inject_fault.split(",")]
            i, j, k = parts[:3]
            delta = parts[3] if len(parts) > 3 else 1
        except ValueError:
            raise InputError("--inject-fault expects I,J,K[,DELTA]") from None
        with inject_fault(i, j, k, delta):
            results = run_selftest(args.depth)
    else:
        results = run_selftest(args.depth)
    passed = all(r.passed for r in results)
    lines = [str(r) for r in results]
    lines.append("selftest: " + ("pass" if passed else "FAIL"))
    data = {"depth": args.depth, "passed": passed,
            "suites": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
    return CommandResult(OK if passed else NEGATIVE, "\n".join(lines), data)


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tk", description="Twisted K-theory computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, json_flag=True):
        p = sub.add_parser(name, help=help_text)
        if json_flag:
            p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(handler=handler)
        return p

    p = add("twist", cmd_twist, "twisted K-groups of a presentation file")
    p.add_argument("file")

    p = add("kk", cmd_kk, "operations on cooperations f(u, v)")
    p.add_argument("action", choices=["member", "decompose", "eps", "conj"])
    p.add_argument("expr")

    p = add("fgl", cmd_fgl, "multiplicative formal group law checks", json_flag=False)
    fgl = p.add_subparsers(dest="action", required=True)
    ns = fgl.add_parser("nseries", help="the n-series [n](s)")
    ns.add_argument("n", type=int)
    ns.add_argument("--order", type=int, required=True)
    ident = fgl.add_parser("identity", help="b(s)^m = b([m](s)), or b(s)b(t) = b(s+t+st) without --m")
    ident.add_argument("--m", type=int)
    ident.add_argument("--order", type=int, required=True)
    for q in (ns, ident):
        q.add_argument("--json", action="store_true", help="machine-readable output")

    p = add("cp", cmd_cp, "products in K_*(CP^inf)", json_flag=False)
    cp = p.add_subparsers(dest="action", required=True)
    mult = cp.add_parser("mult", help="b_I * b_J")
    mult.add_argument("i", type=int)
    mult.add_argument("j", type=int)
    mult.add_argument("--trunc", type=int)
    mult.add_argument("--json", action="store_true", help="machine-readable output")

    p = add("tor", cmd_tor, "Tor over the truncated ring (JSON report)", json_flag=False)
    p.add_argument("file")
    p.add_argument("--max-s", type=int, required=True)
    p.add_argument("--mode", choices=["free", "relative"], default="free")
    p.add_argument("--trunc", type=int, help=f"truncation (default: the file's; {DEFAULT_TRUNCATION} is customary)")

    p = add("selftest", cmd_selftest, "run the invariant suites")
    p.add_argument("--depth", choices=sorted(DEPTHS), default="normal")
    p.add_argument("--inject-fault", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.handler(args)
    except InputError as exc:
        print(f"tk: error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except ConsistencyError as exc:
        print(f"tk: internal consistency failure: {exc}", file=sys.stderr)
        return INTERNAL_ERROR
    out = sys.stdout if result.code in (OK, NEGATIVE) else sys.stderr
    out.write(result.render(getattr(args, "json", False) or args.command == "tor"))
    return result.code


if __name__ == "__main__":
    sys.exit(main())
