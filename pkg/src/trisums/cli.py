"""Command-line interface.

Forms are written ``1,1,3,3`` (diagonal) or ``{b:[30,30],c:[[1,2,1]],shift:1}``
(cross terms, 1-based indices). Output is JSON by default, JSON lines for
batch commands, or CSV with ``--format csv``. Exit codes: 0 ok, 2 failed
verification, 1 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from math import gcd
from typing import Any, Sequence

from . import classnum, counterex, escalate, lattice, qseries
from .forms import CrossConfig, CrossSum, DiagonalSum
from .lattice import CountConvention

ETA_1133 = [(2, 4), (6, 4), (1, -2), (3, -2)]


class UsageError(ValueError):
    pass


@dataclass
class CommandResult:
    status: str  # "ok", "fail" or "side_condition"
    payload: Any
    exit_code: int = 0
    batch: bool = False
    fmt: str = "json"


def parse_form(text: str) -> DiagonalSum | CrossSum:
    text = text.strip()
    if text.startswith("{"):
        quoted = re.sub(r"([{,]\s*)([A-Za-z_]\w*)\s*:", r'\1"\2":', text)
        try:
            doc = json.loads(quoted)
        except json.JSONDecodeError as exc:
            raise UsageError(f"cannot parse cross sum {text!r}: {exc}") from None
        unknown = set(doc) - {"b", "c", "shift"}
        if unknown or "b" not in doc:
            raise UsageError(f"cross sum needs keys b, c, shift; got {sorted(doc)}")
        b = doc["b"]
        c = {}
        for entry in doc.get("c", []):
            if len(entry) != 3:
                raise UsageError(f"cross term {entry} is not [i, j, value]")
            i, j, v = entry
            c[(i - 1, j - 1)] = v
        try:
            return CrossSum(b, CrossConfig(len(b), c), doc.get("shift", 0))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        inner = text.strip("[]").strip()
        return DiagonalSum([int(v) for v in inner.split(",")] if inner else [])
    except ValueError as exc:
        raise UsageError(f"cannot parse diagonal sum {text!r}: {exc}") from None


def _diag(form) -> DiagonalSum:
    if not isinstance(form, DiagonalSum):
        raise UsageError("this command needs a diagonal sum like 1,1,3,3")
    return form


def _cross(form) -> CrossSum:
    return form.to_cross() if isinstance(form, DiagonalSum) else form


def _describe(form) -> Any:
    return list(form.b) if isinstance(form, DiagonalSum) else form.describe()


def _range(args, default_single: int | None) -> list[int]:
    start = args.start if args.start is not None else default_single
    stop = args.stop if args.stop is not None else start
    if start is None:
        raise UsageError("give a value or --from/--to")
    return list(range(start, stop + 1))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--precision", type=int, help="series precision")
    p.add_argument("--cap", type=int, help="search cap (truants, bounds)")
    p.add_argument("--threads", type=int, help="worker processes")
    p.add_argument("--format", choices=["json", "csv", "lines"], help="output format")
    return p


def build_parser() -> argparse.ArgumentParser:
    glob = _global_flags()
    parser = _Parser(prog="trisums", description="Sums of triangular numbers.", parents=[glob])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[glob])

    p = add("count", "representation counts")
    p.add_argument("form")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--from", dest="start", type=int)
    p.add_argument("--to", dest="stop", type=int)
    p.add_argument("--convention", choices=["nonneg", "all"])

    p = add("odd-count", "odd representations by the diagonal quadratic form")
    p.add_argument("form")
    p.add_argument("m", type=int, nargs="?")
    p.add_argument("--from", dest="start", type=int)
    p.add_argument("--to", dest="stop", type=int)

    p = add("universal", "decide universality of a diagonal sum")
    p.add_argument("form")

    p = add("truant", "smallest integer not represented")
    p.add_argument("form")
    p.add_argument("--targets", help="comma list of target integers (default: all)")

    p = add("escalate", "escalator tree")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--targets", help="comma list of target integers (default: all)")
    p.add_argument("--coeff-cap", type=int)

    add("eta-verify", "check the [1,1,3,3] eta quotient identity")

    p = add("hurwitz", "6 H(N) by reduced forms")
    p.add_argument("N", type=int)

    p = add("identity", "class-number identity of an escalator leaf")
    p.add_argument("leaf", help="leaf such as 1,1,3,4, or 'all'")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--from", dest="start", type=int)
    p.add_argument("--to", dest="stop", type=int)

    p = add("formula-1133", "multiplicative formula for [1,1,3,3]")
    p.add_argument("n", type=int)
    p.add_argument("--factorization", help="factorization of n+1 as p:e pairs, e.g. 3:35")

    p = add("lower-bound", "effective lower bound on representation numbers")
    p.add_argument("n", type=int)
    p.add_argument("--leaf")

    p = add("counterexample", "sum missing exactly n")
    p.add_argument("n", type=int)
    p.add_argument("--N", dest="N", type=int)
    p.add_argument("--bound", type=int, default=200)

    p = add("gap-witness", "sum whose first gap is T_(m+1) - 1")
    p.add_argument("m", type=int)
    p.add_argument("--N", dest="N", type=int)

    p = add("normalize", "normalization constant of a cross sum")
    p.add_argument("form")

    p = add("norm", "upper bound on the norm")
    p.add_argument("form")
    p.add_argument("--depth", type=int, default=0)

    p = add("blocks", "block configurations of norm <= m")
    p.add_argument("m", type=int)
    p.add_argument("--smoke", action="store_true",
                   help="also run the bounded norm-1 escalation (diagonal caps 12, truants <= cap)")

    p = add("series", "theta series of a form")
    p.add_argument("form")
    p.add_argument("--convention", choices=["nonneg", "all"])
    return parser


def _conv(name: str | None) -> CountConvention | None:
    return None if name is None else CountConvention(name)


def _targets(text: str | None):
    if text is None:
        return None
    return [int(v) for v in text.split(",") if v.strip()]


def _dispatch(args) -> CommandResult:
    cmd = args.command
    precision = getattr(args, "precision", None)
    cap = getattr(args, "cap", None)
    threads = getattr(args, "threads", 1)

    if cmd == "count":
        form = parse_form(args.form)
        ns = _range(args, args.n)
        if isinstance(form, DiagonalSum):
            conv = _conv(args.convention) or CountConvention.NONNEG
            series = lattice.diagonal_counts(form.b, max(ns), conv)
        else:
            if args.convention == "nonneg":
                raise UsageError("cross sums are counted over all of Z^k")
            conv = CountConvention.ALL
            series = lattice.cross_counts(form, max(ns))
        recs = [{"form": _describe(form), "n": n, "convention": conv.value, "count": series[n]} for n in ns]
        return CommandResult("ok", recs, batch=len(ns) > 1)

    if cmd == "odd-count":
        form = _diag(parse_form(args.form))
        ms = _range(args, args.m)
        series = lattice.odd_counts(form.b, max(ms))
        recs = [{"form": list(form.b), "m": m, "convention": "odd", "count": series[m]} for m in ms]
        return CommandResult("ok", recs, batch=len(ms) > 1)

    if cmd == "universal":
        form = _diag(parse_form(args.form))
        missed = escalate.missed_checks(form)
        return CommandResult("ok", {"form": list(form.b), "universal": not missed, "missed": missed})

    if cmd == "truant":
        form = _diag(parse_form(args.form))
        c = cap if cap is not None else 10_000
        t = escalate.truant(form, _targets(args.targets), c)
        return CommandResult("ok", {"form": list(form.b), "truant": t, "cap": c})

    if cmd == "escalate":
        c = cap if cap is not None else 10_000
        tree = escalate.escalator_tree(_targets(args.targets), c, args.depth, args.coeff_cap, threads)
        return CommandResult("ok", tree.to_json())

    if cmd == "eta-verify":
        P = precision if precision is not None else 200
        lead, eta = qseries.eta_product(ETA_1133, P)
        counts = lattice.diagonal_counts((1, 1, 3, 3), P, CountConvention.NONNEG)
        mismatches = [n for n in range(P + 1) if eta[n] != counts[n]]
        coeff = lambda m: eta[m - 1]  # coefficient of q^m in the full eta quotient
        bad_mult = [
            [a, b] for a in range(2, P + 2) for b in range(a + 1, (P + 1) // a + 1)
            if gcd(a, b) == 1 and coeff(a * b) != coeff(a) * coeff(b)
        ]
        ok = lead == 1 and not mismatches and not bad_mult
        payload = {"leading_power": lead, "precision": P, "mismatches": mismatches,
                   "multiplicativity_failures": bad_mult, "holds": ok}
        return CommandResult("ok" if ok else "fail", payload, 0 if ok else 2)

    if cmd == "hurwitz":
        h = classnum.hurwitz6(args.N)
        return CommandResult("ok", {"N": h.N, "sixH": h.sixH, "H": str(h.H), "discriminant": h.valid})

    if cmd == "identity":
        leaves = list(classnum.RULES) if args.leaf == "all" else [tuple(parse_form(args.leaf).b)]
        ns = _range(args, args.n)
        recs = []
        for leaf in leaves:
            for n in ns:
                try:
                    recs.append(classnum.identity_check(leaf, n).record())
                except KeyError as exc:
                    raise UsageError(str(exc)) from None
        failed = any(r["holds"] is False for r in recs)
        status = "fail" if failed else ("side_condition" if all(r["holds"] is None for r in recs) else "ok")
        return CommandResult(status, recs, 2 if failed else 0, batch=len(recs) > 1)

    if cmd == "formula-1133":
        fac = None
        if args.factorization:
            fac = {}
            for part in args.factorization.split(","):
                p, e = part.split(":")
                fac[int(p)] = fac.get(int(p), 0) + int(e)
        try:
            value = classnum.count_1133_formula(args.n, fac)
        except classnum.IncompleteFactorizationError as exc:
            return CommandResult("fail", {"n": args.n, "error": str(exc)}, 2)
        return CommandResult("ok", {"n": args.n, "count": value})

    if cmd == "lower-bound":
        leaf = tuple(parse_form(args.leaf).b) if args.leaf else None
        value = classnum.rep_lower_bound(args.n, leaf)
        prof = classnum.three_adic_profile(args.n)
        return CommandResult("ok", {"n": args.n, "leaf": None if leaf is None else list(leaf),
                                    "lower_bound": value, "v3": prof.v3, "cofactor": prof.cofactor})

    if cmd == "counterexample":
        spec = counterex.build_fn(args.n, args.N)
        report = counterex.verify_fn(spec, args.bound)
        payload = {"N": spec.N, "form": spec.assembled.describe(), **report.record()}
        return CommandResult("ok" if report.passed else "fail", payload, 0 if report.passed else 2)

    if cmd == "gap-witness":
        w = counterex.max_gap_witness(args.m, args.N)
        payload = {"m": args.m, "form": w.form.describe(), "missed": w.missed,
                   "observed": w.observed, "verified": w.verified}
        return CommandResult("ok" if w.verified else "fail", payload, 0 if w.verified else 2)

    if cmd == "normalize":
        form = _cross(parse_form(args.form))
        res = lattice.minimize(form, ignore_shift=True)
        normed = form.with_shift(-res.min_value)
        return CommandResult("ok", {"form": normed.describe(), "shift": normed.shift, "m_tilde": -res.min_value,
                                    "minimizers": [list(x) for x in res.minimizers], "cap_hit": res.cap_hit})

    if cmd == "norm":
        form = _cross(parse_form(args.form))
        value = lattice.norm_estimate(form, args.depth)
        return CommandResult("ok", {"form": form.describe(), "depth": args.depth, "norm": value,
                                    "upper_bound_only": True})

    if cmd == "blocks":
        cfgs = escalate.enumerate_block_configs(args.m)
        payload = {"m": args.m, "configs": [{"k": c.k, "c": c.triples()} for c in cfgs]}
        if args.smoke:
            found = escalate.bounded_norm_one_truants(truant_cap=cap if cap is not None else 64)
            payload["smoke_truants"] = found
            payload["outside_reference"] = sorted(set(found) - set(escalate.Y1_REFERENCE))
        return CommandResult("ok", payload)

    if cmd == "series":
        form = parse_form(args.form)
        P = precision if precision is not None else 20
        s = qseries.theta(form, _conv(args.convention), P)
        return CommandResult("ok", {"form": _describe(form), "precision": P, "coeffs": list(s.coeffs)})

    raise UsageError("missing subcommand")


def run(argv: Sequence[str]) -> CommandResult:
    try:
        args = build_parser().parse_args(list(argv))
        if args.command is None:
            raise UsageError("missing subcommand")
        result = _dispatch(args)
    except UsageError as exc:
        return CommandResult("fail", {"error": str(exc)}, 1)
    except (ValueError, KeyError, IndexError) as exc:
        return CommandResult("fail", {"error": str(exc)}, 1)
    result.fmt = getattr(args, "format", "json")
    return result


def _flatten(rec: dict) -> dict:
    return {k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in rec.items()}


def render(result: CommandResult, fmt: str = "json") -> str:
    payload = result.payload
    recs = payload if isinstance(payload, list) else [payload]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(recs[0]), lineterminator="\n")
        writer.writeheader()
        for rec in recs:
            writer.writerow(_flatten(rec))
        return buf.getvalue().rstrip("\n")
    if fmt == "lines" and isinstance(payload, dict) and "coeffs" in payload:
        return "\n".join(f"{n}:{a}" for n, a in enumerate(payload["coeffs"]))
    if result.batch or isinstance(payload, list):
        return "\n".join(json.dumps(r, sort_keys=True) for r in recs)
    return json.dumps(payload, sort_keys=True)


def main(argv: Sequence[str] | None = None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    if result.exit_code == 1:
        print(f"usage error: {result.payload['error']}", file=sys.stderr)
        print("run 'trisums --help' for usage", file=sys.stderr)
        return 1
    print(render(result, result.fmt))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
