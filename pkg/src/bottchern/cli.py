"""``bottchern`` command line.

Exit codes: 0 success (or the lemma holds), 1 the lemma fails (``lemma`` only),
2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bicomplex import ValidationError, check_identities
from .catalog import CatalogEntry, ModelFormatError, builtins, load, lookup
from .liemodel import StructureError, compile_model
from .report import build_report, parse_degrees, render_json, render_text, symplectic_lines, symplectic_section
from .symplectic import SymplecticError, check_model

EXIT_OK, EXIT_FAILS, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (ModelFormatError, ValidationError, StructureError, SymplecticError, ValueError)


class InputError(Exception):
    pass


def resolve(target: str, check: bool = True) -> CatalogEntry:
    try:
        return lookup(target)
    except KeyError:
        pass
    path = Path(target)
    if not path.exists():
        raise InputError(f"{target}: not a built-in model and no such file")
    try:
        return load(path, check=check)
    except INPUT_ERRORS as e:
        raise InputError(f"{target}: {e}") from None


def cmd_report(args) -> int:
    entry = resolve(args.target)
    r = build_report(entry, parse_degrees(args.degrees), args.window)
    sys.stdout.write(render_json(r) if args.json else render_text(r))
    return EXIT_OK


def cmd_lemma(args) -> int:
    entry = resolve(args.target)
    if entry.kind == "symplectic":
        raise InputError(f"{args.target}: lemma needs a complex structure or raw bicomplex, got a symplectic model")
    r = build_report(entry)
    lem = r.lemma
    if args.json:
        sys.stdout.write(render_json({"key": entry.key, "lemma": lem}))
    else:
        print(
            f"{entry.key}: del-delbar lemma {'holds' if lem['holds'] else 'fails'}"
            f" (natural map: {lem['by_natural_map']}, Delta=0: {lem['by_delta']}, BC=A: {lem['by_bc_equals_a']})"
        )
    return EXIT_OK if lem["holds"] else EXIT_FAILS


def cmd_symplectic(args) -> int:
    entry = resolve(args.target)
    if entry.kind != "symplectic":
        raise InputError(f"{args.target}: kind mismatch, expected a symplectic model but got {entry.kind}")
    s = symplectic_section(entry, args.window)
    if args.json:
        sys.stdout.write(render_json({"key": entry.key, "symplectic": s}))
    else:
        sys.stdout.write("\n".join([f"model: {entry.key}", *symplectic_lines(s)]) + "\n")
    return EXIT_OK


def _print_checks(rows) -> bool:
    ok = True
    for name, passed, detail in rows:
        ok &= passed
        print(f"[{'PASS' if passed else 'FAIL'}] {name}" + (f": {detail}" if detail else ""))
    return ok


def cmd_validate(args) -> int:
    entry = resolve(args.target, check=False)
    rows = []
    if entry.kind == "complex-structure":
        m = entry.payload
        rows += [(f"d^2 = 0 on {g}", ok, "") for g, ok in m.check_d_squared()]
        rows += [(f"no (0,2) part in d({g})", ok, "") for g, ok in m.check_integrable()]
        if all(ok for _, ok, _ in rows):
            try:
                c = compile_model(m)
            except (StructureError, ValidationError) as e:
                rows.append(("compile", False, str(e)))
            else:
                rows += [(ch.name + (f" at {ch.where}" if ch.where is not None else ""), ch.ok, ch.detail)
                         for ch in check_identities(c)]
    elif entry.kind == "symplectic":
        rows = check_model(entry.payload)
    else:
        rows = [(ch.name + (f" at {ch.where}" if ch.where is not None else ""), ch.ok, ch.detail)
                for ch in check_identities(entry.payload)]
    return EXIT_OK if _print_checks(rows) else EXIT_INPUT


def cmd_list(args) -> int:
    entries = builtins()
    if args.json:
        sys.stdout.write(json.dumps([{"key": e.key, "kind": e.kind, "provenance": e.provenance} for e in entries],
                                    indent=2) + "\n")
    else:
        width = max(len(e.key) for e in entries)
        for e in entries:
            print(f"{e.key:<{width}}  {e.kind:<17}  {e.provenance}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bottchern", description="Bott-Chern, Aeppli and Dolbeault diagnostics.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, target=True, window=False, degrees=False, json_flag=True):
        p = sub.add_parser(name, help=help_)
        if target:
            p.add_argument("target", help="built-in key or model file")
        if json_flag:
            p.add_argument("--json", action="store_true", help="machine-readable output")
        if degrees:
            p.add_argument("--degrees", metavar="k1..k2", help="restrict the degree table")
        if window:
            p.add_argument("--window", metavar="Q", type=int, default=2, help="columns of the shear complex")
        p.set_defaults(func=fn)

    add("report", cmd_report, "full report", window=True, degrees=True)
    add("lemma", cmd_lemma, "del-delbar lemma verdict")
    add("symplectic", cmd_symplectic, "Tseng-Yau dimensions and bounds", window=True)
    add("validate", cmd_validate, "check structural identities", json_flag=False)
    add("list", cmd_list, "list built-in models", target=False)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "window", 0) is not None and getattr(args, "window", 0) < 0:
        print("error: --window must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
