"""One :class:`Report` value, rendered either as a text table or canonical JSON."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

from .bicomplex import LETTERS, DoubleComplex, FUNCTORS, strip_support, varouchas
from .catalog import CatalogEntry
from .diagnostics import (
    check_upper_bound_aeppli,
    check_upper_bound_bc,
    degree_report,
    degree_range,
    lemma_verdict,
)
from .liemodel import StokesError, kss_pairing, stokes_check
from .symplectic import betti, check_model, check_symplectic_bound, hard_lefschetz, shear, tseng_yau

__all__ = ["Report", "build_report", "symplectic_section", "render_text", "render_json", "parse_degrees"]

TABLES = ("dolbeault", "conj_dolbeault", "bott_chern", "aeppli")
_TABLE_LABELS = {
    "dolbeault": "h_dbar",
    "conj_dolbeault": "h_del",
    "bott_chern": "h_BC",
    "aeppli": "h_A",
}


@dataclass
class Report:
    key: str
    kind: str
    provenance: str
    complex_name: str
    top_degree: int | None
    strip: list[int] | None
    tables: dict[str, dict[str, int]] = field(default_factory=dict)
    degrees: list[dict[str, Any]] = field(default_factory=list)
    varouchas: dict[str, dict[str, int]] | None = None
    lemma: dict[str, bool] = field(default_factory=dict)
    kss: dict[str, Any] | None = None
    symplectic: dict[str, Any] | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def parse_degrees(text: str | None) -> tuple[int, int] | None:
    """``"1..5"`` -> ``(1, 5)``; a single integer selects one degree."""
    if text is None:
        return None
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise ValueError(f"degree range must look like k1..k2, got {text!r}") from None
    if a > b:
        raise ValueError(f"empty degree range {text!r}")
    return a, b


def _key(b) -> str:
    return f"{b.p},{b.q}"


def _complex_sections(r: Report, c: DoubleComplex, degrees: tuple[int, int] | None) -> None:
    for name in TABLES:
        r.tables[name] = {_key(b): FUNCTORS[name](c, b).dim for b in c.support()}
    ks = list(degree_range(c))
    if degrees is not None:
        ks = [k for k in ks if degrees[0] <= k <= degrees[1]]
    manifold = c.top_degree is not None and c.has_conjugation
    for k in ks:
        row: dict[str, Any] = {"k": k}
        if c.top_degree is not None:
            d = degree_report(c, k)
            row.update(
                b=d.betti, h_dbar=d.h_dol, h_del=d.h_conj_dol, h_BC=d.h_bc, h_A=d.h_a,
                const=d.refined_constant, S=d.s, N=d.n, Delta=d.delta,
            )
        if manifold:
            row["bound_A"] = check_upper_bound_aeppli(c, k).holds
            row["bound_BC"] = check_upper_bound_bc(c, k).holds
        r.degrees.append(row)
    if c.top_degree is None:
        r.notes.append("no top degree: S, N and Delta are not defined")
    if c.has_conjugation:
        t = varouchas(c)
        r.varouchas = {L: {str(k): t.total(L, k) for k in degree_range(c)} for L in LETTERS}
    v = lemma_verdict(c)
    r.lemma = {
        "holds": v.holds,
        "by_natural_map": v.by_natural_map,
        "by_delta": v.by_delta,
        "by_bc_equals_a": v.by_bc_equals_a,
        "agree": v.agree,
    }
    if not c.has_conjugation:
        r.notes.append("no conjugation: only the natural-map verdict is meaningful")


def _kss_section(entry: CatalogEntry) -> dict[str, Any]:
    m = entry.payload
    if not stokes_check(m):
        return {"defined": False, "reason": "exact top forms do not integrate to zero"}
    per = []
    for k in range(2 * m.n + 1):
        try:
            pm = kss_pairing(m, k)
        except StokesError:  # pragma: no cover - guarded above
            return {"defined": False, "reason": "Stokes check failed"}
        per.append({"k": k, "rows": pm.matrix.rows, "cols": pm.matrix.cols, "rank": pm.rank,
                    "non_degenerate": pm.non_degenerate})
    return {"defined": True, "holds": all(p["non_degenerate"] for p in per), "degrees": per}


def symplectic_section(entry: CatalogEntry, window: int = 2) -> dict[str, Any]:
    m = entry.payload
    checks = [{"name": n, "ok": ok, "detail": d} for n, ok, d in check_model(m)]
    ty = [tseng_yau(m, k, window=window) for k in range(m.dim + 1)]
    bs = [betti(m, k) for k in range(m.dim + 1)]
    bounds = check_symplectic_bound(m)
    sh = shear(m, window)
    return {
        "checks": checks,
        "window": window,
        "shear_strip": list(strip_support(sh)),
        "degrees": [
            {"k": t.k, "b": b, "plus": t.plus, "times": t.times, "plus_equals_times": t.plus == t.times,
             "at_least_2b": t.plus + t.times >= 2 * b}
            for t, b in zip(ty, bs)
        ],
        "bounds": [
            {"parity": "even" if x.parity == 0 else "odd", "plus_sum": x.plus_sum, "times_sum": x.times_sum,
             "bound": x.bound, "plus_slack": x.plus_slack, "times_slack": x.times_slack, "holds": x.holds}
            for x in bounds
        ],
        "hard_lefschetz": hard_lefschetz(m),
    }


def build_report(entry: CatalogEntry, degrees: tuple[int, int] | None = None, window: int = 2) -> Report:
    if entry.kind == "symplectic":
        c = shear(entry.payload, window)
    else:
        c = entry.complex
    strip = strip_support(c)
    r = Report(
        key=entry.key,
        kind=entry.kind,
        provenance=entry.provenance,
        complex_name=c.name,
        top_degree=c.top_degree,
        strip=list(strip) if strip is not None else None,
    )
    _complex_sections(r, c, degrees)
    if entry.kind == "complex-structure":
        r.kss = _kss_section(entry)
    if entry.kind == "symplectic":
        r.symplectic = symplectic_section(entry, window)
    return r


# rendering ------------------------------------------------------------------


def render_json(r: Report | dict) -> str:
    d = r.to_dict() if isinstance(r, Report) else r
    return json.dumps(d, sort_keys=True, indent=2) + "\n"


def _yn(x: bool) -> str:
    return "yes" if x else "no"


def _bidegree_table(table: dict[str, int]) -> list[str]:
    if not table:
        return ["  (empty)"]
    cells = {tuple(int(x) for x in k.split(",")): v for k, v in table.items()}
    ps = range(min(p for p, _ in cells), max(p for p, _ in cells) + 1)
    qs = range(min(q for _, q in cells), max(q for _, q in cells) + 1)
    lines = ["    q\\p " + "".join(f"{p:>5}" for p in ps)]
    for q in reversed(qs):
        lines.append(f"    {q:>3} " + "".join(f"{cells.get((p, q), 0):>5}" for p in ps))
    return lines


def render_text(r: Report | dict) -> str:
    d = r.to_dict() if isinstance(r, Report) else r
    out = [f"model: {d['key']} ({d['kind']})", f"provenance: {d['provenance']}"]
    out.append(f"top degree: {d['top_degree'] if d['top_degree'] is not None else '-'}")
    if d["strip"] is not None:
        out.append(f"strip: ell={d['strip'][0]} N={d['strip'][1]}")
    for name in TABLES:
        out.append("")
        out.append(f"{_TABLE_LABELS[name]}^(p,q):")
        out.extend(_bidegree_table(d["tables"][name]))
    rows = d["degrees"]
    if rows and "S" in rows[0]:
        out.append("")
        cols = ["k", "b", "h_dbar", "h_del", "h_BC", "h_A", "S", "N", "Delta"]
        if "bound_A" in rows[0]:
            cols += ["bound_A", "bound_BC"]
        out.append("  " + " ".join(f"{c:>8}" for c in cols))
        for row in rows:
            cells = [row[c] if not isinstance(row[c], bool) else _yn(row[c]) for c in cols]
            out.append("  " + " ".join(f"{x:>8}" for x in cells))
    if d["varouchas"] is not None:
        out.append("")
        out.append("Varouchas totals by degree:")
        ks = sorted(d["varouchas"]["a"], key=int)
        out.append("    " + "".join(f"{k:>5}" for k in ["k"] + ks))
        for L in LETTERS:
            out.append("    " + f"{L:>5}" + "".join(f"{d['varouchas'][L][k]:>5}" for k in ks))
    lem = d["lemma"]
    out.append("")
    out.append(
        f"del-delbar lemma: {'holds' if lem['holds'] else 'fails'} "
        f"(natural map {_yn(lem['by_natural_map'])}, Delta=0 {_yn(lem['by_delta'])}, "
        f"BC=A {_yn(lem['by_bc_equals_a'])}, agree {_yn(lem['agree'])})"
    )
    if d["kss"] is not None:
        kss = d["kss"]
        if not kss["defined"]:
            out.append(f"KSS pairing: undefined ({kss['reason']})")
        else:
            out.append(f"KSS pairing: {'non-degenerate' if kss['holds'] else 'degenerate'}")
            for p in kss["degrees"]:
                out.append(
                    f"    k={p['k']}: {p['rows']}x{p['cols']} rank {p['rank']}"
                    f" {'non-degenerate' if p['non_degenerate'] else 'degenerate'}"
                )
    if d["symplectic"] is not None:
        out.extend(["", *symplectic_lines(d["symplectic"])])
    for note in d["notes"]:
        out.append(f"note: {note}")
    return "\n".join(out) + "\n"


def symplectic_lines(s: dict) -> list[str]:
    out = ["symplectic checks:"]
    for ch in s["checks"]:
        out.append(f"    [{'PASS' if ch['ok'] else 'FAIL'}] {ch['name']}" + (f": {ch['detail']}" if ch["detail"] else ""))
    out.append(f"shear window Q={s['window']}, strip ell={s['shear_strip'][0]} N={s['shear_strip'][1]}")
    out.append("  " + " ".join(f"{c:>6}" for c in ("k", "b", "plus", "times")))
    for row in s["degrees"]:
        out.append("  " + " ".join(f"{row[c]:>6}" for c in ("k", "b", "plus", "times")))
    for b in s["bounds"]:
        out.append(
            f"{b['parity']} degrees: plus {b['plus_sum']}, times {b['times_sum']} <= {b['bound']}"
            f" (slack {b['plus_slack']}, {b['times_slack']}) {'holds' if b['holds'] else 'FAILS'}"
        )
    out.append(f"hard Lefschetz: {_yn(s['hard_lefschetz'])}")
    return out


__all__ += ["symplectic_lines"]
