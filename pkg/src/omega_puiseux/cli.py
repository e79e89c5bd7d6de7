"""Command line front end: ``omega-puiseux {roots,branches,semigroup,eval}``.

Exit status is 0 on success, 1 when a computation fails (caps, tower,
precision, undetermined values) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import ParseError, PuiseuxError, UndeterminedValue
from .parsing import eval_poly_at, parse_poly, parse_quadreal, parse_weight, to_ypoly
from .scalars import QuadReal, rat_str
from .semigroup import SubringSpec, check_invariance, partition_branches, semigroup_window
from .series import Weight, format_exp, format_series, series_to_json
from .solver import Caps, expand_roots


class UsageError(Exception):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    omega: Weight
    trunc: QuadReal
    caps: Caps
    subring: SubringSpec
    format: str


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def parse_subring(text: str) -> SubringSpec:
    """``formal`` or ``cone:a1,a2;b1,b2;...`` (integer generators)."""
    text = text.strip()
    if text == "formal":
        return SubringSpec()
    if not text.startswith("cone:"):
        raise UsageError(f"unknown subring {text!r}; use 'formal' or 'cone:<generators>'")
    gens = []
    for chunk in text[5:].split(";"):
        try:
            gens.append(tuple(int(v) for v in chunk.split(",")))
        except ValueError:
            raise UsageError(f"bad cone generator {chunk.strip()!r}") from None
    return SubringSpec("cone", tuple(gens))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("poly", help="monic polynomial in y with coefficients in x1..xn")
    common.add_argument("--omega", help="weight vector, e.g. '1,0+1*sqrt(2)'")
    common.add_argument("--trunc", help="expansion weight bound a+b*sqrt(d)")
    common.add_argument("--depth-cap", type=_positive_int, default=Caps.depth)
    common.add_argument("--denominator-cap", type=_positive_int, default=Caps.denominator)
    common.add_argument("--conductor-cap", type=_positive_int, default=Caps.conductor)
    common.add_argument("--orbit-cap", type=_positive_int, default=Caps.orbit)
    common.add_argument("--subring", default="formal", help="formal | cone:<g1;g2;...>")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = _Parser(prog="omega-puiseux", description="Newton-Puiseux roots over weight orders")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    sub.add_parser("roots", parents=[common], help="expand all roots")
    sub.add_parser("branches", parents=[common], help="group roots into Galois branches")
    p = sub.add_parser("semigroup", parents=[common], help="value-semigroup window")
    p.add_argument("--root", default="all-in-branch", help="root index (from 1) or all-in-branch")
    p.add_argument("--bound", help="window weight bound (default: --trunc)")
    p = sub.add_parser("eval", parents=[common], help="value of h at a root")
    p.add_argument("h", help="polynomial h in x1..xn, y")
    p.add_argument("--root", default="1", help="root index (from 1)")
    return parser


def _config(args, n: int) -> RunConfig:
    if args.omega is None:
        if n > 1:
            raise UsageError("--omega is required when more than one x-variable is used")
        omega = Weight([1])
    else:
        omega = parse_weight(args.omega)
    if omega.n < n:
        raise UsageError(f"polynomial uses x{n} but --omega has {omega.n} entries")
    trunc = parse_quadreal(args.trunc) if args.trunc else _default_trunc(omega)
    if trunc.sign() < 0:
        raise UsageError("--trunc must be nonnegative")
    caps = Caps(args.depth_cap, args.denominator_cap, args.conductor_cap, args.orbit_cap)
    return RunConfig(omega, trunc, caps, parse_subring(args.subring), args.format)


def _default_trunc(omega: Weight) -> QuadReal:
    total = QuadReal(0)
    for c in omega.components:
        total = total + c
    return total * 3


def _exp_json(e) -> list:
    return [rat_str(x) for x in e]


def _root_json(i, r) -> dict:
    return {"index": i + 1, "multiplicity": r.multiplicity, "exact": r.exact,
            "series": series_to_json(r.series)}


def _root_text(i, r) -> str:
    state = "exact" if r.exact else f"known up to weight {r.series.trunc}"
    body = format_series(r.series)
    if not r.exact:
        body += " + ..."
    return f"xi{i + 1} (multiplicity {r.multiplicity}, {state}): {body}"


def _select_root(text: str, roots) -> int:
    try:
        idx = int(text)
    except ValueError:
        raise UsageError(f"invalid root selector {text!r}") from None
    if not 1 <= idx <= len(roots):
        raise UsageError(f"root index {idx} out of range 1..{len(roots)}")
    return idx - 1


def _window_text(label: str, w) -> list[str]:
    return [
        f"{label}: window up to weight {w.bound}",
        "  values: " + " ".join(format_exp(v) for v in w.values),
        "  generators (tentative): " + " ".join(format_exp(v) for v in w.generators),
    ]


def run(args, out) -> int:
    poly = parse_poly(args.poly)
    cfg = _config(args, poly.n)
    f = to_ypoly(poly, cfg.omega)
    roots = expand_roots(f, cfg.trunc, cfg.caps)
    doc: dict = {"command": args.command, "omega": [c.to_json() for c in cfg.omega.components],
                 "trunc": cfg.trunc.to_json()}
    lines: list[str] = []

    if args.command == "roots":
        doc["roots"] = [_root_json(i, r) for i, r in enumerate(roots)]
        lines = [_root_text(i, r) for i, r in enumerate(roots)]

    elif args.command == "branches":
        branches = partition_branches(roots, cfg.trunc, cfg.caps.orbit)
        doc["roots"] = [_root_json(i, r) for i, r in enumerate(roots)]
        doc["branches"] = [{"members": [m + 1 for m in b.members], "warnings": list(b.warnings)}
                           for b in branches]
        lines = [_root_text(i, r) for i, r in enumerate(roots)]
        lines.append(f"{len(branches)} branch(es):")
        for b in branches:
            names = ", ".join(f"xi{m + 1}" for m in b.members)
            lines.append(f"  {{{names}}}")
            lines.extend(f"    warning: {w}" for w in b.warnings)

    elif args.command == "semigroup":
        bound = parse_quadreal(args.bound) if args.bound else cfg.trunc
        if args.root == "all-in-branch":
            branches = partition_branches(roots, cfg.trunc, cfg.caps.orbit)
            doc["branches"] = []
            for b in branches:
                entry = {"members": [m + 1 for m in b.members]}
                names = ", ".join(f"xi{m + 1}" for m in b.members)
                lines.append(f"branch {{{names}}}")
                if len(b.members) > 1:
                    rep = check_invariance(f, roots, b, cfg.subring, bound)
                    windows = rep.windows
                    entry["invariant"] = rep.invariant
                    entry["discrepancies"] = rep.to_json()["discrepancies"]
                else:
                    windows = [semigroup_window(roots[b.members[0]].series, f, cfg.subring, bound)]
                    entry["invariant"] = None
                entry["windows"] = [w.to_json() for w in windows]
                for m, w in zip(b.members, windows):
                    lines.extend("  " + s for s in _window_text(f"xi{m + 1}", w))
                if entry["invariant"] is not None:
                    lines.append(f"  invariant: {'true' if entry['invariant'] else 'false'}")
                doc["branches"].append(entry)
        else:
            i = _select_root(args.root, roots)
            w = semigroup_window(roots[i].series, f, cfg.subring, bound)
            doc["root"] = i + 1
            doc["window"] = w.to_json()
            lines = _window_text(f"xi{i + 1}", w)

    else:  # eval
        h = parse_poly(args.h)
        if h.n > cfg.omega.n:
            raise UsageError(f"h uses x{h.n} but --omega has {cfg.omega.n} entries")
        i = _select_root(args.root, roots)
        value = eval_poly_at(h, cfg.omega, roots[i].series)
        doc["root"] = i + 1
        doc["h_at_root"] = series_to_json(value)
        known = [t for t, w in zip(value.terms, value.weights) if value.exact or w < value.trunc]
        if not known:
            raise UndeterminedValue(
                f"value undetermined at this truncation: h(xi{i + 1}) has no terms "
                f"below weight {value.trunc}"
            )
        nu = known[0][0]
        doc["value"] = _exp_json(nu)
        body = format_series(value)
        lines = [f"h(xi{i + 1}) = {body}" + ("" if value.exact else " + ..."),
                 f"value: {format_exp(nu)}"]

    if cfg.format == "json":
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return 0


def _emit_error(fmt: str, code: str, message: str, status: int, extra=None) -> int:
    if fmt == "json":
        obj = {"error": {"code": code, "message": message, "status": status}}
        if extra:
            obj["error"].update(extra)
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"omega-puiseux: error [{code}]: {message}\n")
    return status


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if _wants_json(argv) else "text"
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _emit_error(fmt, "usage", str(exc), 2)
    try:
        return run(args, sys.stdout)
    except UsageError as exc:
        return _emit_error(fmt, "usage", str(exc), 2)
    except ParseError as exc:
        return _emit_error(fmt, exc.code, str(exc), 2, {"line": exc.line, "column": exc.column})
    except PuiseuxError as exc:
        return _emit_error(fmt, exc.code, str(exc), 1)
    except ValueError as exc:
        return _emit_error(fmt, "usage", str(exc), 2)


def _wants_json(argv) -> bool:
    for i, a in enumerate(argv):
        if a == "--format=json" or (a == "--format" and i + 1 < len(argv) and argv[i + 1] == "json"):
            return True
    return False
