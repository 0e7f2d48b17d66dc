"""Print S^k, N^k and Delta^k for the built-in complex-structure models."""

import argparse

from bottchern.catalog import builtins, load
from bottchern.diagnostics import degree_report


def rows(entry):
    c = entry.complex
    top = c.top_degree
    return [degree_report(c, k) for k in range(1, top)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("files", nargs="*", help="extra model files to include")
    args = ap.parse_args()
    entries = [e for e in builtins() if e.kind == "complex-structure"]
    entries += [load(f) for f in args.files]
    for e in entries:
        cells = "  ".join(f"({r.s},{r.n},{r.delta})" for r in rows(e))
        print(f"{e.key:<16} {cells}")


if __name__ == "__main__":
    main()
