"""Command-line interface: ``hhlie analyze|verify|gen|selftest``.

Exit codes: 0 pass (warnings allowed), 1 a theorem check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .algebra import build_algebra
from .errors import HHLieError
from .fields import field_from_string
from .generators import gen_kronecker, gen_nakayama, gen_rad_square_zero, gen_trunc_poly, parse_edge_list
from .harness import Context, algebra_summary, lie_summary, run_all
from .quiver import parse_presentation

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_algebra(path: str, field_override: str | None = None):
    text = _read(path)
    try:
        p = parse_presentation(text)
        if field_override:
            p = p.with_field(field_from_string(field_override))
        return build_algebra(p)
    except (HHLieError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _yn(b) -> str:
    return "-" if b is None else ("yes" if b is True else "no" if b is False else str(b))


def format_analysis(alg: dict, lie: dict) -> str:
    qc = alg["quiver_class"]
    lines = [
        f"algebra: dim {alg['dim']}, simples {alg['simples']}, edges {alg['edges']}, "
        f"loewy length {alg['loewy_length']}, field {alg['field']}",
        f"quiver: loops {_yn(qc['has_loops'])}, max parallel {qc['max_parallel']}, "
        f"simple digraph {_yn(qc['simple_digraph'])}",
        f"center dim {alg['center_dim']}; symmetric: {lie['symmetric']}",
    ]
    if lie["witt"] != "n/a":
        lines.append(f"HH1 dim {alg['hh1_dim']}; witt: {lie['witt']}; sl2: {lie['sl2']}")
    else:
        lines.append(f"HH1 dim {alg['hh1_dim']}; sl2: {lie['sl2']}")
    lines.append(
        f"solvable: {_yn(lie['solvable'])}; derived length: {_yn(lie['derived_length'])}; "
        f"abelian: {_yn(lie['abelian'])}; derived subalgebra nilpotent: {_yn(lie['nilpotent_derived'])} "
        f"(class {_yn(lie['nilpotency_class_of_derived'])})")
    lines.append(f"derived series dims: {lie['derived_dims']}; simple probe: {lie['simple_probe']}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    A = load_algebra(args.file, args.field_override)
    ctx = Context(A, args.seed)
    alg, lie = algebra_summary(A, ctx), lie_summary(ctx)
    if args.json:
        print(json.dumps({"algebra": alg, "analysis": lie, "seed": args.seed}, sort_keys=True, indent=2))
    else:
        print(format_analysis(alg, lie))
    return EXIT_OK


def cmd_verify(args) -> int:
    A = load_algebra(args.file, args.field_override)
    rep = run_all(A, args.seed)
    if args.json:
        print(rep.dumps())
    else:
        for c in rep.checks:
            tag = "" if c.applicable else " (not applicable)"
            print(f"{c.id:<18} {c.verdict}{tag}: {c.reason}")
            for n in c.notes:
                print(f"    {n}")
        print(f"status: {rep.status}")
    return EXIT_FAIL if rep.status == "fail" else EXIT_OK


def cmd_gen(args) -> int:
    fld = field_from_string(args.field)
    name, params = args.name, args.params
    try:
        if name == "kronecker":
            if params:
                raise ValueError("kronecker takes no parameters")
            text = gen_kronecker(fld)
        elif name == "trunc-poly":
            if len(params) != 1:
                raise ValueError("usage: gen trunc-poly N")
            text = gen_trunc_poly(int(params[0]), fld)
        elif name == "nakayama":
            if len(params) != 2:
                raise ValueError("usage: gen nakayama E L")
            text = gen_nakayama(int(params[0]), int(params[1]), fld)
        elif name == "rad-sq-zero":
            if not params:
                raise ValueError("usage: gen rad-sq-zero SRC-DST [SRC-DST ...]")
            text = gen_rad_square_zero(parse_edge_list(" ".join(params)), field=fld)
        else:
            raise ValueError(f"unknown generator {name!r}")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(text)
    return EXIT_OK


def cmd_selftest(args) -> int:
    result = acceptance.selftest(args.seed)
    if args.json:
        print(json.dumps(result, sort_keys=True, indent=2))
    else:
        for c in result["criteria"]:
            print(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['id']:>2}  {c['title']}")
            for f in c["failures"]:
                print(f"        {f}")
        print()
        for r in result["corpus"]:
            print(f"  {r['status']:<5} {r['name']}")
        print(f"status: {result['status']}")
    return EXIT_OK if result["status"] == "pass" else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hhlie", description="HH^1 of quiver algebras as Lie algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn, hlp in (("analyze", cmd_analyze, "print invariants of an algebra"),
                          ("verify", cmd_verify, "run the theorem checks")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("file", help="presentation file, or - for stdin")
        p.add_argument("--json", action="store_true")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--field-override", metavar="FIELD",
                       help="re-read the presentation over another field (changes the algebra)")
        p.set_defaults(func=fn)

    p = sub.add_parser("gen", help="emit a presentation of an example family")
    p.add_argument("name", choices=["kronecker", "trunc-poly", "nakayama", "rad-sq-zero"])
    p.add_argument("params", nargs="*")
    p.add_argument("--field", default="Q")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("selftest", help="run the acceptance suite on the built-in corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, HHLieError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
