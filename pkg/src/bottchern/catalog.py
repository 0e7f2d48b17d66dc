"""Built-in models and the JSON loaders.

Three file formats share one envelope, a top-level ``"format"`` field:

* ``"structure"``: complex structure equations, ``{"name", "n", "d": {"<i>": [{"coeff": ["re","im"], "word": ["a","cb"]}]}}``
* ``"symplectic"``: ``{"name", "dim", "d": {"<i>": [{"coeff": "a/b", "word": [j,k]}]}, "omega": [...]}``
* ``"bicomplex"``: ``{"name", "field": "Q(i)", "topDegree", "spaces", "del", "delbar", "conjugation"?}``

Every format accepts an optional ``"provenance"`` string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .bicomplex import Bidegree, DoubleComplex, ValidationError, validate
from .exactnum import format_rational, format_scalar, parse_rational, parse_scalar
from .linalg import Matrix
from .liemodel import StructureError, StructureModel, compile_model, generator_token
from .symplectic import SymplecticError, SymplecticModel, validate_model

__all__ = [
    "CatalogEntry",
    "ModelFormatError",
    "KINDS",
    "builtins",
    "lookup",
    "load",
    "loads",
    "parse",
    "serialize",
    "dump",
    "dumps",
    "raw_entry",
]

KINDS = ("complex-structure", "symplectic", "raw-bicomplex")
_FORMAT_OF_KIND = {"complex-structure": "structure", "symplectic": "symplectic", "raw-bicomplex": "bicomplex"}
_KIND_OF_FORMAT = {v: k for k, v in _FORMAT_OF_KIND.items()}


class ModelFormatError(ValueError):
    """A model file that does not parse; ``context`` names the line or field."""

    def __init__(self, message: str, context: str = ""):
        super().__init__(f"{context}: {message}" if context else message)
        self.context = context


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    key: str
    kind: str
    payload: Any
    provenance: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if not self.provenance:
            raise ValueError(f"entry {self.key!r} needs a provenance note")

    @property
    def complex(self) -> DoubleComplex:
        if self.kind == "raw-bicomplex":
            return self.payload
        return self.payload.complex

    def validate(self) -> None:
        if self.kind == "complex-structure":
            compile_model(self.payload)
        elif self.kind == "symplectic":
            validate_model(self.payload)
        else:
            validate(self.payload)


# built-ins ------------------------------------------------------------------

_TORUS = "complex torus: all invariant 1-forms closed"


def _structure(key, n, eqs, provenance):
    return CatalogEntry(key, "complex-structure", StructureModel.from_tokens(key, n, eqs, provenance), provenance)


def _symplectic(key, dim, eqs, omega, provenance):
    m = SymplecticModel(
        key,
        dim,
        {i: tuple((Fraction(c), w) for c, w in terms) for i, terms in eqs.items()},
        {w: Fraction(c) for w, c in omega.items()},
        provenance,
    )
    return CatalogEntry(key, "symplectic", m, provenance)


def _make_builtins() -> tuple[CatalogEntry, ...]:
    return (
        _structure(
            "iwasawa", 3, {3: [(-1, ("1", "2"))]},
            "Iwasawa manifold, holomorphically parallelizable nilmanifold: d phi^3 = -phi^1 ^ phi^2",
        ),
        _structure(
            "kodaira-primary", 2, {2: [(1, ("1", "c1"))]},
            "primary Kodaira surface: d phi^2 = phi^1 ^ phibar^1",
        ),
        _structure("torus2", 1, {}, _TORUS + " (complex dimension 1)"),
        _structure("torus4", 2, {}, _TORUS + " (complex dimension 2)"),
        _structure("torus6", 3, {}, _TORUS + " (complex dimension 3)"),
        _symplectic(
            "kt-symplectic", 4, {4: [(1, (1, 2))]}, {(1, 3): 1, (2, 4): 1},
            "Kodaira-Thurston nilmanifold: d e^4 = e^1 ^ e^2, omega = e^13 + e^24",
        ),
        _symplectic(
            "torus4-symplectic", 4, {}, {(1, 3): 1, (2, 4): 1},
            "flat 4-torus with omega = e^13 + e^24",
        ),
        _symplectic(
            "torus6-symplectic", 6, {}, {(1, 4): 1, (2, 5): 1, (3, 6): 1},
            "flat 6-torus with omega = e^14 + e^25 + e^36",
        ),
    )


_BUILTINS: tuple[CatalogEntry, ...] | None = None


def builtins() -> list[CatalogEntry]:
    global _BUILTINS
    if _BUILTINS is None:
        _BUILTINS = _make_builtins()
    return list(_BUILTINS)


def lookup(key: str) -> CatalogEntry:
    for e in builtins():
        if e.key == key:
            return e
    raise KeyError(key)


# parsing --------------------------------------------------------------------


def _req(obj: dict, name: str, ctx: str):
    if not isinstance(obj, dict):
        raise ModelFormatError("expected an object", ctx)
    if name not in obj:
        raise ModelFormatError(f"missing field {name!r}", ctx)
    return obj[name]


def _int(x, ctx: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ModelFormatError(f"expected an integer, got {x!r}", ctx)
    return x


def _wrap(fn, x, ctx):
    try:
        return fn(x)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise ModelFormatError(str(e), ctx) from None


def _parse_structure(doc: dict) -> StructureModel:
    name = str(doc.get("name", "unnamed"))
    n = _int(_req(doc, "n", "n"), "n")
    if n <= 0:
        raise ModelFormatError("n must be positive", "n")
    d = doc.get("d", {})
    if not isinstance(d, dict):
        raise ModelFormatError("expected an object keyed by generator index", "d")
    eqs = {}
    for key, terms in d.items():
        ctx = f"d.{key}"
        try:
            i = int(key)
        except ValueError:
            raise ModelFormatError("generator key must be an integer", ctx) from None
        if not isinstance(terms, list):
            raise ModelFormatError("expected a list of terms", ctx)
        parsed = []
        for t, term in enumerate(terms):
            tctx = f"{ctx}[{t}]"
            coeff = _wrap(parse_scalar, _req(term, "coeff", tctx), tctx + ".coeff")
            word = _req(term, "word", tctx)
            if not isinstance(word, list) or len(word) != 2:
                raise ModelFormatError("words must have length 2", tctx + ".word")
            parsed.append((coeff, (str(word[0]), str(word[1]))))
        eqs[i] = parsed
    try:
        return StructureModel.from_tokens(name, n, eqs, str(doc.get("provenance", "")))
    except StructureError as e:
        raise ModelFormatError(str(e), "d") from None


def _parse_terms(terms, ctx) -> list[tuple[Fraction, tuple[int, int]]]:
    if not isinstance(terms, list):
        raise ModelFormatError("expected a list of terms", ctx)
    out = []
    for t, term in enumerate(terms):
        tctx = f"{ctx}[{t}]"
        coeff = _wrap(parse_rational, _req(term, "coeff", tctx), tctx + ".coeff")
        word = _req(term, "word", tctx)
        if not isinstance(word, list) or len(word) != 2:
            raise ModelFormatError("words must have length 2", tctx + ".word")
        j, k = (_int(w, tctx + ".word") for w in word)
        if j > k:
            j, k, coeff = k, j, -coeff
        out.append((coeff, (j, k)))
    return out


def _parse_symplectic(doc: dict) -> SymplecticModel:
    name = str(doc.get("name", "unnamed"))
    dim = _int(_req(doc, "dim", "dim"), "dim")
    d = doc.get("d", {})
    if not isinstance(d, dict):
        raise ModelFormatError("expected an object keyed by generator index", "d")
    eqs = {}
    for key, terms in d.items():
        try:
            i = int(key)
        except ValueError:
            raise ModelFormatError("generator key must be an integer", f"d.{key}") from None
        eqs[i] = tuple(_parse_terms(terms, f"d.{key}"))
    omega: dict = {}
    for c, w in _parse_terms(_req(doc, "omega", "omega"), "omega"):
        omega[w] = omega.get(w, Fraction(0)) + c
    try:
        return SymplecticModel(name, dim, eqs, omega, str(doc.get("provenance", "")))
    except SymplecticError as e:
        raise ModelFormatError(str(e), "d") from None


def _parse_matrix(block: dict, rows: int, cols: int, ctx: str) -> Matrix:
    entries = _req(block, "entries", ctx)
    if not isinstance(entries, list):
        raise ModelFormatError("entries must be a list", ctx + ".entries")
    if entries and isinstance(entries[0], list) and entries[0] and isinstance(entries[0][0], list):
        # nested rows of ["re","im"] pairs
        if len(entries) != rows or any(not isinstance(r, list) or len(r) != cols for r in entries):
            raise ModelFormatError(f"shape mismatch: expected {rows}x{cols}", ctx + ".entries")
        flat = [x for r in entries for x in r]
    else:
        if len(entries) != rows * cols:
            raise ModelFormatError(
                f"shape mismatch: expected {rows}x{cols} = {rows * cols} entries, got {len(entries)}",
                ctx + ".entries",
            )
        flat = entries
    vals = tuple(_wrap(parse_scalar, x, f"{ctx}.entries[{i}]") for i, x in enumerate(flat))
    return Matrix(rows, cols, vals)


def _parse_bicomplex(doc: dict) -> DoubleComplex:
    name = str(doc.get("name", "unnamed"))
    field = doc.get("field", "Q(i)")
    if field != "Q(i)":
        raise ModelFormatError(f"unsupported field {field!r}", "field")
    top = doc.get("topDegree")
    if top is not None:
        top = _int(top, "topDegree")
    dims: dict = {}
    spaces = _req(doc, "spaces", "spaces")
    if not isinstance(spaces, list):
        raise ModelFormatError("expected a list", "spaces")
    for i, s in enumerate(spaces):
        ctx = f"spaces[{i}]"
        b = Bidegree(_int(_req(s, "p", ctx), ctx + ".p"), _int(_req(s, "q", ctx), ctx + ".q"))
        d = _int(_req(s, "dim", ctx), ctx + ".dim")
        if d < 0:
            raise ModelFormatError("negative dimension", ctx + ".dim")
        if b in dims:
            raise ModelFormatError(f"bidegree {b} listed twice", ctx)
        if d:
            dims[b] = d

    def maps(field_name, shift):
        out = {}
        blocks = doc.get(field_name) or []
        if not isinstance(blocks, list):
            raise ModelFormatError("expected a list", field_name)
        for i, blk in enumerate(blocks):
            ctx = f"{field_name}[{i}]"
            b = Bidegree(_int(_req(blk, "p", ctx), ctx + ".p"), _int(_req(blk, "q", ctx), ctx + ".q"))
            tgt = shift(b)
            out[b] = _parse_matrix(blk, dims.get(tgt, 0), dims.get(b, 0), f"{ctx} at {b}")
        return out

    dl = maps("del", lambda b: Bidegree(b.p + 1, b.q))
    dlb = maps("delbar", lambda b: Bidegree(b.p, b.q + 1))
    conj = maps("conjugation", lambda b: Bidegree(b.q, b.p)) if doc.get("conjugation") is not None else None
    dl = {b: m for b, m in dl.items() if m.rows and m.cols}
    dlb = {b: m for b, m in dlb.items() if m.rows and m.cols}
    if conj is not None:
        conj = {b: m for b, m in conj.items() if m.rows and m.cols}
    try:
        return DoubleComplex(dims, dl, dlb, conj, top, name)
    except (ValidationError, ValueError) as e:
        raise ModelFormatError(str(e), "spaces") from None


def parse(doc: Any, key: str | None = None) -> CatalogEntry:
    """Decode a JSON document into an entry without running validation."""
    fmt = _req(doc, "format", "format")
    parsers = {"structure": _parse_structure, "symplectic": _parse_symplectic, "bicomplex": _parse_bicomplex}
    if fmt not in parsers:
        raise ModelFormatError(f"unknown format {fmt!r}; expected one of {sorted(parsers)}", "format")
    payload = parsers[fmt](doc)
    name = str(doc.get("name", key or "unnamed"))
    provenance = str(doc.get("provenance") or f"loaded from {key or name}")
    return CatalogEntry(key or name, _KIND_OF_FORMAT[fmt], payload, provenance)


def _read_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(e.msg, f"{source}: line {e.lineno}, column {e.colno}") from None


def loads(text: str, source: str = "<string>", check: bool = True) -> CatalogEntry:
    entry = parse(_read_json(text, source), key=None)
    if check:
        entry.validate()
    return entry


def load(path: str | Path, check: bool = True) -> CatalogEntry:
    """Read, parse and (by default) validate a model file.

    Validation failures surface as :class:`ValidationError`,
    :class:`StructureError` or :class:`SymplecticError` naming the identity.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ModelFormatError(e.strerror or str(e), str(path)) from None
    return loads(text, str(path), check=check)


# serialization --------------------------------------------------------------


def _matrix_blocks(table) -> list[dict]:
    out = []
    for b in sorted(table):
        m = table[b]
        if m.is_zero():
            continue
        out.append({"p": b.p, "q": b.q, "entries": [[format_scalar(x) for x in row] for row in m.to_rows()]})
    return out


def serialize(entry: CatalogEntry) -> dict:
    """JSON-ready document; ``parse(serialize(e))`` rebuilds an equivalent entry."""
    fmt = _FORMAT_OF_KIND[entry.kind]
    p = entry.payload
    doc: dict = {"format": fmt, "name": entry.key}
    if entry.kind == "complex-structure":
        doc["n"] = p.n
        doc["d"] = {
            str(i): [
                {"coeff": format_scalar(c), "word": [generator_token(w[0], p.n), generator_token(w[1], p.n)]}
                for c, w in terms
            ]
            for i, terms in sorted(p.equations.items())
        }
    elif entry.kind == "symplectic":
        doc["dim"] = p.dim
        doc["d"] = {
            str(i): [{"coeff": format_rational(Fraction(c)), "word": list(w)} for c, w in terms]
            for i, terms in sorted(p.equations.items())
        }
        doc["omega"] = [{"coeff": format_rational(Fraction(c)), "word": list(w)} for w, c in sorted(p.omega.items())]
    else:
        doc["field"] = "Q(i)"
        doc["topDegree"] = p.top_degree
        doc["spaces"] = [{"p": b.p, "q": b.q, "dim": p.dim(b)} for b in p.support()]
        doc["del"] = _matrix_blocks(p.del_)
        doc["delbar"] = _matrix_blocks(p.delbar)
        if p.conjugation is not None:
            doc["conjugation"] = [
                {"p": b.p, "q": b.q, "entries": [[format_scalar(x) for x in row] for row in p.conjugation[b].to_rows()]}
                for b in sorted(p.conjugation)
            ]
    doc["provenance"] = entry.provenance
    return doc


def dumps(entry: CatalogEntry) -> str:
    return json.dumps(serialize(entry), indent=2) + "\n"


def dump(entry: CatalogEntry, path: str | Path) -> None:
    Path(path).write_text(dumps(entry), encoding="utf-8")


def raw_entry(c: DoubleComplex, key: str, provenance: str) -> CatalogEntry:
    return CatalogEntry(key, "raw-bicomplex", c, provenance)
