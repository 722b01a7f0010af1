"""Command-line front end.

Exit codes: 0 success, 1 validation failure (axiom report with failures),
2 malformed input or flags.  All machine output is canonical JSON;
``--format text`` renders tables instead.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import construct, fields, formats, rigidity, witt
from .core import check_axioms, find_isomorphisms, subgroup
from .errors import HflabError
from .gauss import gauss_extend

GEN_KINDS = ("krasner", "fq", "local", "padic", "2adic", "extension", "scheme")


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load(path):
    return formats.parse(_read_text(path))


def _load_base(path):
    # a base may be a file or the name of the parameterless builtin
    if path == "krasner":
        return construct.krasner()
    return _load(path)


def _emit(text, out):
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table_text(h):
    width = max(len(e) for e in h.elements) + 1
    lines = [f"elements: {' '.join(h.elements)}",
             f"zero: {h.zero}  one: {h.one}",
             "neg: " + " ".join(f"{a}->{h.neg_of(a)}" for a in h.elements),
             "", "add:"]
    header = " " * width + "| " + " ".join(e.ljust(width) for e in h.elements)
    lines.append(header)
    lines.append("-" * len(header))
    for a in h.elements:
        row = [("{" + ",".join(sorted(h.add_of(a, b), key=h.index)) + "}").ljust(width)
               for b in h.elements]
        lines.append(a.ljust(width) + "| " + " ".join(row))
    lines.append("")
    lines.append("mul:")
    lines.append(header)
    lines.append("-" * len(header))
    for a in h.elements:
        row = [h.mul_of(a, b).ljust(width) for b in h.elements]
        lines.append(a.ljust(width) + "| " + " ".join(row))
    return "\n".join(lines) + "\n"


def _emit_hyperfield(h, args):
    if getattr(args, "format", "json") == "text":
        _emit(_table_text(h), getattr(args, "out", None))
    else:
        _emit(formats.serialize(h), getattr(args, "out", None))


def _parse_value_set_table(text):
    doc = json.loads(text)
    mul = {}
    for key, val in doc["mul"].items():
        a, _, b = key.partition("|")
        mul[(a, b)] = val
    return construct.ValueSetTable(
        group=tuple(doc["group"]),
        minus_one=doc["minus_one"],
        mul=mul,
        value_sets={k: frozenset(v) for k, v in doc["value_sets"].items()},
    )


def _cmd_gen(args):
    kind = args.kind
    if kind == "krasner":
        h = construct.krasner()
    elif kind == "fq":
        if args.q is None:
            raise HflabError("gen --kind fq needs --q")
        h = fields.q_finite_field(args.q)
    elif kind == "local":
        if args.q is None:
            raise HflabError("gen --kind local needs --q")
        h = fields.q_local(args.q)
    elif kind == "padic":
        if args.p is None:
            raise HflabError("gen --kind padic needs --p")
        cfg = fields.PadicOracleConfig(args.p, args.N) if args.N else None
        h = fields.q_padic(args.p, cfg)
    elif kind == "2adic":
        cfg = fields.PadicOracleConfig(2, args.N) if args.N else None
        h = fields.q_2adic(cfg)
    elif kind == "extension":
        if args.base is None or args.r is None:
            raise HflabError("gen --kind extension needs --base FILE and --r R")
        base = _load_base(args.base)
        gens = args.gens.split(",") if args.gens else None
        predicted = 1 + len(base.star) * (1 << args.r)
        if predicted > formats.max_elements():
            raise HflabError(
                f"extension would have {predicted} elements, over the bound")
        h, _ = construct.group_extension(base, args.r, gens=gens)
    elif kind == "scheme":
        if args.base is None:
            raise HflabError("gen --kind scheme needs --base FILE "
                             "(a value-set-table document)")
        h = construct.scheme_to_hyperfield(_parse_value_set_table(_read_text(args.base)))
    else:  # pragma: no cover - argparse restricts choices
        raise HflabError(f"unknown kind {kind!r}")
    _emit_hyperfield(h, args)
    return 0


def _report_text(report):
    lines = []
    for c in report.checks:
        status = "pass" if c.passed else "FAIL"
        wit = f"  witness: {', '.join(c.witness)}" if c.witness else ""
        lines.append(f"{c.axiom:<6} {status}  {c.detail}{wit}")
    lines.append("valid" if report.ok else "INVALID")
    return "\n".join(lines) + "\n"


def _cmd_check(args):
    h = _load(args.file)
    report = check_axioms(h)
    if args.format == "text":
        _emit(_report_text(report), args.out)
    else:
        _emit(formats.canonical_json(report.to_dict()), args.out)
    return 0 if report.ok else 1


def _cmd_iso(args):
    h1, h2 = _load(args.a), _load(args.b)
    limit = None if args.all else (args.limit or 1)
    isos = find_isomorphisms(h1, h2, limit=limit)
    payload = [m.to_dict() for m in isos]
    if args.format == "text":
        if not isos:
            _emit("no isomorphism\n", args.out)
        else:
            _emit("\n".join(
                " ".join(f"{a}->{m.map[a]}" for a in h1.elements)
                for m in isos) + "\n", args.out)
    else:
        _emit(formats.canonical_json(payload), args.out)
    return 0


def _cmd_prime(args):
    _emit_hyperfield(construct.prime(_load(args.file)), args)
    return 0


def _cmd_quotient(args):
    h = _load(args.file)
    t = subgroup(h, args.subgroup.split(","))
    hq, _ = construct.quotient(h, t)
    _emit_hyperfield(hq, args)
    return 0


def _cmd_extend(args):
    h = _load(args.file)
    gens = args.gens.split(",") if args.gens else None
    predicted = 1 + len(h.star) * (1 << args.r)
    if predicted > formats.max_elements():
        raise HflabError(f"extension would have {predicted} elements, over the bound")
    ext, _ = construct.group_extension(h, args.r, gens=gens)
    _emit_hyperfield(ext, args)
    return 0


def _cmd_witt(args):
    ring = witt.witt_ring(_load(args.file))
    if args.format == "text":
        lines = [f"|W| = {ring.size}",
                 f"additive order of <1> = {ring.order_of_one}",
                 f"I^2 trivial: {ring.i2_trivial}",
                 "classes: " + "; ".join(
                     "<" + ",".join(c.entries) + ">" if c.entries else "0"
                     for c in ring.classes)]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(formats.canonical_json(ring.to_dict()), args.out)
    return 0


def _cmd_rigid(args):
    h = _load(args.file)
    report = rigidity.basic_part(h, args.subgroup.split(","))
    if args.format == "text":
        d = report.to_dict()
        lines = [f"T = {{{','.join(d['subgroup'])}}}",
                 f"B(T) = {{{','.join(d['basic_part'])}}}",
                 f"(H*:T) = {d['index_of_T']}, (H*:B(T)) = {d['index_of_basic_part']}",
                 f"exceptional: {d['exceptional']}"]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(formats.canonical_json(report.to_dict()), args.out)
    return 0


def _cmd_detect(args):
    report = rigidity.detect_valuation_subgroups(_load(args.file))
    if args.format == "text":
        lines = []
        for e in report.entries:
            shape = e.case or "-"
            lines.append(f"T = {{{','.join(e.t_members)}}}  case {shape}  "
                         f"B(T) = {{{','.join(e.basic.basic_part)}}}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(formats.canonical_json(report.to_dict()), args.out)
    return 0


def _cmd_gauss(args):
    val = gauss_extend(args.p, args.expr)
    text = "inf" if val == float("inf") else str(val)
    _emit(text + "\n", args.out)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="hflab",
        description="finite hyperfields, quadratic form schemes, Witt rings, "
                    "and valuation detection at desk scale")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_format=True):
        p.add_argument("--out", help="write output to FILE instead of stdout")
        if with_format:
            p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("gen", help="generate a hyperfield table")
    p.add_argument("--kind", choices=GEN_KINDS, required=True)
    p.add_argument("--q", type=int, help="finite field size (fq, local)")
    p.add_argument("--p", type=int, help="prime (padic)")
    p.add_argument("--r", type=int, help="extension rank (extension)")
    p.add_argument("--N", type=int, help="oracle precision exponent (padic, 2adic)")
    p.add_argument("--base", help="base table FILE, or 'krasner' (extension); "
                                  "value-set-table FILE (scheme)")
    p.add_argument("--gens", help="comma-separated generator labels (extension)")
    common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("check", help="run the axiom battery on a table")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("iso", help="search for isomorphisms between two tables")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--all", action="store_true", help="list all isomorphisms")
    p.add_argument("--limit", type=int, help="stop after this many")
    common(p)
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("prime", help="prime addition of a table")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_prime)

    p = sub.add_parser("quotient", help="quotient modulo a subgroup")
    p.add_argument("file")
    p.add_argument("--subgroup", required=True,
                   help="comma-separated subgroup members")
    common(p)
    p.set_defaults(func=_cmd_quotient)

    p = sub.add_parser("extend", help="group extension by (Z/2)^r")
    p.add_argument("file")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--gens", help="comma-separated generator labels")
    common(p)
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("witt", help="Witt ring summary of a table")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_witt)

    p = sub.add_parser("rigid", help="rigidity report for a subgroup")
    p.add_argument("file")
    p.add_argument("--subgroup", required=True,
                   help="comma-separated subgroup members")
    common(p)
    p.set_defaults(func=_cmd_rigid)

    p = sub.add_parser("detect", help="scan subgroups for valuation footprints")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("gauss", help="Gauss value of a polynomial expression")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--expr", required=True)
    common(p, with_format=False)
    p.set_defaults(func=_cmd_gauss)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except HflabError as e:
        print(f"hflab: {e}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError,
            ZeroDivisionError) as e:
        print(f"hflab: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
