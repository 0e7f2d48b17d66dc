"""Bounded double complexes and their cohomologies.

A :class:`DoubleComplex` stores finitely many nonzero spaces ``B^{p,q}`` and
the matrices of ``del`` (bidegree (1,0)) and ``delbar`` (bidegree (0,1)),
indexed by their source bidegree.  Matrices have ``rows = dim target`` and
``cols = dim source``; missing matrices are zero.

Sign convention: ``del`` and ``delbar`` anticommute, so ``d = del + delbar``
squares to zero on the total complex.  The composite ``del delbar`` out of
``(p, q)`` is always computed as ``del[(p, q+1)] @ delbar[(p, q)]``; the other
path differs only by a sign and gives the same kernels and images.

An optional conjugation is a conjugate-linear map ``B^{p,q} -> B^{q,p}``,
stored as the matrix ``S`` with ``sigma(v) = S @ conj(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from .exactnum import ZERO
from .linalg import (
    Matrix,
    Subspace,
    block_diag,
    image_basis,
    induced_map_rank,
    intersect,
    kernel_basis,
    quotient_dim,
    rank,
    subspace_sum,
)

__all__ = [
    "Bidegree",
    "DoubleComplex",
    "CohomologySpace",
    "VarouchasTable",
    "ValidationError",
    "CapabilityError",
    "Check",
    "check_identities",
    "validate",
    "dolbeault",
    "conj_dolbeault",
    "de_rham",
    "bott_chern",
    "aeppli",
    "varouchas",
    "natural_map_ranks",
    "strip_support",
    "total",
]


class ValidationError(ValueError):
    def __init__(self, message: str, where=None):
        super().__init__(message)
        self.where = where


class CapabilityError(RuntimeError):
    """The complex lacks data (conjugation, top degree, strip) an operation needs."""


class Bidegree(NamedTuple):
    p: int
    q: int

    def __str__(self):
        return f"({self.p},{self.q})"


def _bd(p, q=None) -> Bidegree:
    if q is None:
        p, q = p
    return Bidegree(int(p), int(q))


@dataclass(frozen=True, eq=False)
class DoubleComplex:
    dims: Mapping[Bidegree, int]
    del_: Mapping[Bidegree, Matrix] = field(default_factory=dict)
    delbar: Mapping[Bidegree, Matrix] = field(default_factory=dict)
    conjugation: Mapping[Bidegree, Matrix] | None = None
    top_degree: int | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        dims = {_bd(k): int(v) for k, v in self.dims.items() if int(v) != 0}
        if any(v < 0 for v in dims.values()):
            raise ValidationError("negative space dimension")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "del_", {_bd(k): v for k, v in self.del_.items()})
        object.__setattr__(self, "delbar", {_bd(k): v for k, v in self.delbar.items()})
        if self.conjugation is not None:
            object.__setattr__(self, "conjugation", {_bd(k): v for k, v in self.conjugation.items()})

    # -- shape helpers --------------------------------------------------
    def dim(self, p, q=None) -> int:
        return self.dims.get(_bd(p, q), 0)

    def support(self) -> list[Bidegree]:
        return sorted(self.dims)

    @property
    def has_conjugation(self) -> bool:
        return self.conjugation is not None

    def degree_range(self) -> range:
        """Total degrees carrying a nonzero space."""
        if not self.dims:
            return range(0)
        ks = [p + q for p, q in self.dims]
        return range(min(ks), max(ks) + 1)

    def bidegrees_of(self, k: int) -> list[Bidegree]:
        return sorted(b for b in self.dims if b.p + b.q == k)

    def _matrix(self, table, p, q, dp, dq) -> Matrix:
        m = table.get(Bidegree(p, q))
        rows, cols = self.dim(p + dp, q + dq), self.dim(p, q)
        if m is None:
            return Matrix.zeros(rows, cols)
        return m

    def d1(self, p, q) -> Matrix:
        """Matrix of del out of (p, q)."""
        return self._matrix(self.del_, p, q, 1, 0)

    def d2(self, p, q) -> Matrix:
        """Matrix of delbar out of (p, q)."""
        return self._matrix(self.delbar, p, q, 0, 1)

    def sigma(self, p, q) -> Matrix:
        if self.conjugation is None:
            raise CapabilityError(f"complex {self.name!r} has no conjugation")
        m = self.conjugation.get(Bidegree(p, q))
        if m is None:
            return Matrix.zeros(self.dim(q, p), self.dim(p, q))
        return m

    def _memo(self, key, fn):
        c = self._cache
        if key not in c:
            c[key] = fn()
        return c[key]

    def dd(self, p, q) -> Matrix:
        """Composite del delbar out of (p, q), into (p+1, q+1)."""
        return self._memo(("dd", p, q), lambda: self.d1(p, q + 1) @ self.d2(p, q))

    # -- cached subspaces of B^{p,q} -------------------------------------
    def ker_del(self, p, q) -> Subspace:
        return self._memo(("kd", p, q), lambda: kernel_basis(self.d1(p, q)))

    def ker_delbar(self, p, q) -> Subspace:
        return self._memo(("kdb", p, q), lambda: kernel_basis(self.d2(p, q)))

    def ker_dd(self, p, q) -> Subspace:
        return self._memo(("kdd", p, q), lambda: kernel_basis(self.dd(p, q)))

    def im_del(self, p, q) -> Subspace:
        """Image of del landing in (p, q)."""
        return self._memo(("id", p, q), lambda: image_basis(self.d1(p - 1, q)))

    def im_delbar(self, p, q) -> Subspace:
        return self._memo(("idb", p, q), lambda: image_basis(self.d2(p, q - 1)))

    def im_dd(self, p, q) -> Subspace:
        return self._memo(("idd", p, q), lambda: image_basis(self.dd(p - 1, q - 1)))

    def rank_of(self, kind: str, p, q) -> int:
        mats = {"del": self.d1, "delbar": self.d2, "dd": self.dd}
        return self._memo(("rk", kind, p, q), lambda: rank(mats[kind](p, q)))

    # -- total complex --------------------------------------------------
    def total_dim(self, k: int) -> int:
        return sum(self.dim(b) for b in self.bidegrees_of(k))

    def total_offsets(self, k: int) -> dict[Bidegree, int]:
        off, pos = {}, 0
        for b in self.bidegrees_of(k):
            off[b] = pos
            pos += self.dims[b]
        return off

    def total_d(self, k: int) -> Matrix:
        """Matrix of d = del + delbar from Tot^k to Tot^{k+1}."""

        def build():
            src, dst = self.total_offsets(k), self.total_offsets(k + 1)
            rows, cols = self.total_dim(k + 1), self.total_dim(k)
            e = [ZERO] * (rows * cols)
            for b, c0 in src.items():
                for m, t in ((self.d1(*b), Bidegree(b.p + 1, b.q)), (self.d2(*b), Bidegree(b.p, b.q + 1))):
                    if t not in dst:
                        continue
                    r0 = dst[t]
                    for i in range(m.rows):
                        for j in range(m.cols):
                            x = m.entries[i * m.cols + j]
                            if x:
                                e[(r0 + i) * cols + c0 + j] = x
            return Matrix(rows, cols, tuple(e))

        return self._memo(("tot", k), build)

    def embed(self, k: int, parts: Mapping[Bidegree, Subspace]) -> Subspace:
        """Direct sum of per-bidegree subspaces, as a subspace of Tot^k."""
        blocks = []
        for b in self.bidegrees_of(k):
            s = parts.get(b)
            blocks.append(s.basis if s is not None else Matrix.zeros(self.dims[b], 0))
        if not blocks:
            return Subspace.zero(0)
        return Subspace(self.total_dim(k), block_diag(*blocks), _trusted=True)

    # -- transformations ------------------------------------------------
    def change_basis(self, P: Mapping[Bidegree, Matrix], P_inv: Mapping[Bidegree, Matrix]) -> "DoubleComplex":
        """Complex in new coordinates ``v = P v'`` on every bidegree."""

        def get(t, b):
            b = _bd(b)
            return t.get(b) if b in t else Matrix.identity(self.dim(b))

        new_del = {b: get(P_inv, (b.p + 1, b.q)) @ self.d1(*b) @ get(P, b) for b in self.dims}
        new_delbar = {b: get(P_inv, (b.p, b.q + 1)) @ self.d2(*b) @ get(P, b) for b in self.dims}
        conj = None
        if self.conjugation is not None:
            conj = {b: get(P_inv, (b.q, b.p)) @ self.sigma(*b) @ get(P, b).conj() for b in self.dims}
        return DoubleComplex(self.dims, new_del, new_delbar, conj, self.top_degree, self.name)


@dataclass(frozen=True)
class CohomologySpace:
    at: object  # Bidegree or total degree
    numerator: Subspace
    denominator: Subspace
    dim: int


# -- validation ----------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    where: object = None
    detail: str = ""

    def __str__(self):
        loc = f" at {self.where}" if self.where is not None else ""
        status = "PASS" if self.ok else "FAIL"
        extra = f": {self.detail}" if self.detail else ""
        return f"[{status}] {self.name}{loc}{extra}"


def _shape_checks(c: DoubleComplex) -> list[Check]:
    out = []
    for label, table, (dp, dq) in (("del", c.del_, (1, 0)), ("delbar", c.delbar, (0, 1))):
        for b, m in sorted(table.items()):
            want = (c.dim(b.p + dp, b.q + dq), c.dim(b))
            ok = m.shape == want
            out.append(Check(f"{label} shape", ok, b, "" if ok else f"expected {want}, got {m.shape}"))
    if c.conjugation is not None:
        for b, m in sorted(c.conjugation.items()):
            want = (c.dim(b.q, b.p), c.dim(b))
            ok = m.shape == want
            out.append(Check("conjugation shape", ok, b, "" if ok else f"expected {want}, got {m.shape}"))
    return out


def check_identities(c: DoubleComplex) -> list[Check]:
    """Run every structural check; failures are reported, not raised."""
    checks = _shape_checks(c)
    if not all(ch.ok for ch in checks):
        return checks
    for b in c.support():
        p, q = b
        checks.append(Check("del del = 0", (c.d1(p + 1, q) @ c.d1(p, q)).is_zero(), b))
        checks.append(Check("delbar delbar = 0", (c.d2(p, q + 1) @ c.d2(p, q)).is_zero(), b))
        anti = c.d1(p, q + 1) @ c.d2(p, q) + c.d2(p + 1, q) @ c.d1(p, q)
        checks.append(Check("del delbar + delbar del = 0", anti.is_zero(), b))
    if c.conjugation is not None:
        for b in c.support():
            p, q = b
            sym = c.dim(q, p) == c.dim(p, q)
            checks.append(Check("conjugation dims symmetric", sym, b))
            if not sym:
                continue
            invol = c.sigma(q, p) @ c.sigma(p, q).conj()
            checks.append(Check("sigma sigma = id", invol == Matrix.identity(c.dim(b)), b))
            lhs = c.sigma(p + 1, q) @ c.d1(p, q).conj()
            rhs = c.d2(q, p) @ c.sigma(p, q)
            checks.append(Check("sigma del = delbar sigma", lhs == rhs, b))
    return checks


def validate(c: DoubleComplex) -> None:
    """Raise :class:`ValidationError` at the first failing identity."""
    for ch in check_identities(c):
        if not ch.ok:
            loc = f" at {ch.where}" if ch.where is not None else ""
            raise ValidationError(f"{ch.name} fails{loc}" + (f": {ch.detail}" if ch.detail else ""), ch.where)


# -- cohomology functors --------------------------------------------------

def dolbeault(c: DoubleComplex, p, q=None) -> CohomologySpace:
    """Row cohomology of delbar at (p, q)."""
    b = _bd(p, q)
    num, den = c.ker_delbar(*b), c.im_delbar(*b)
    d = quotient_dim(num, den)
    other = c.dim(b) - c.rank_of("delbar", b.p, b.q) - c.rank_of("delbar", b.p, b.q - 1)
    if d != other:
        raise ArithmeticError(f"Dolbeault dimension mismatch at {b}: {d} vs {other}")
    return CohomologySpace(b, num, den, d)


def conj_dolbeault(c: DoubleComplex, p, q=None) -> CohomologySpace:
    """Column cohomology of del at (p, q)."""
    b = _bd(p, q)
    num, den = c.ker_del(*b), c.im_del(*b)
    d = quotient_dim(num, den)
    other = c.dim(b) - c.rank_of("del", b.p, b.q) - c.rank_of("del", b.p - 1, b.q)
    if d != other:
        raise ArithmeticError(f"conjugate Dolbeault dimension mismatch at {b}: {d} vs {other}")
    return CohomologySpace(b, num, den, d)


def de_rham(c: DoubleComplex, k: int) -> CohomologySpace:
    def build():
        num = kernel_basis(c.total_d(k))
        den = image_basis(c.total_d(k - 1))
        return CohomologySpace(k, num, den, quotient_dim(num, den))

    return c._memo(("dR", k), build)


def bott_chern(c: DoubleComplex, p, q=None) -> CohomologySpace:
    b = _bd(p, q)

    def build():
        num = intersect(c.ker_del(*b), c.ker_delbar(*b))
        den = c.im_dd(*b)
        d = quotient_dim(num, den)
        other = num.dim - c.rank_of("dd", b.p - 1, b.q - 1)
        if d != other:
            raise ArithmeticError(f"Bott-Chern dimension mismatch at {b}: {d} vs {other}")
        return CohomologySpace(b, num, den, d)

    return c._memo(("BC", b), build)


def aeppli(c: DoubleComplex, p, q=None) -> CohomologySpace:
    b = _bd(p, q)

    def build():
        num = c.ker_dd(*b)
        den = subspace_sum(c.im_del(*b), c.im_delbar(*b))
        return CohomologySpace(b, num, den, quotient_dim(num, den))

    return c._memo(("A", b), build)


FUNCTORS = {
    "dolbeault": dolbeault,
    "conj_dolbeault": conj_dolbeault,
    "bott_chern": bott_chern,
    "aeppli": aeppli,
}


def total(c: DoubleComplex, functor, k: int) -> int:
    """Sum of a bigraded cohomology dimension over p + q = k."""
    if isinstance(functor, str):
        functor = FUNCTORS[functor]
    return sum(functor(c, b).dim for b in c.bidegrees_of(k))


# -- Varouchas groups -----------------------------------------------------

LETTERS = "abcdef"


@dataclass(frozen=True)
class VarouchasTable:
    entries: Mapping[Bidegree, dict]

    def get(self, letter: str, p, q=None) -> int:
        return self.entries.get(_bd(p, q), {}).get(letter, 0)

    def total(self, letter: str, k: int) -> int:
        return sum(v[letter] for b, v in self.entries.items() if b.p + b.q == k)

    def is_zero(self) -> bool:
        return all(not any(v.values()) for v in self.entries.values())


def varouchas(c: DoubleComplex) -> VarouchasTable:
    def build():
        out = {}
        for b in c.support():
            kd, kdb = c.ker_del(*b), c.ker_delbar(*b)
            idl, idb, idd = c.im_del(*b), c.im_delbar(*b), c.im_dd(*b)
            kdd = c.ker_dd(*b)
            out[b] = {
                "a": quotient_dim(intersect(idb, idl), idd),
                "b": quotient_dim(intersect(kdb, idl), idd),
                "c": quotient_dim(kdd, subspace_sum(kdb, idl)),
                "d": quotient_dim(intersect(idb, kd), idd),
                "e": quotient_dim(kdd, subspace_sum(kd, idb)),
                "f": quotient_dim(kdd, subspace_sum(kdb, kd)),
            }
        return VarouchasTable(out)

    return c._memo(("varouchas",), build)


# -- natural maps ---------------------------------------------------------

NATURAL_MAPS = (
    ("BC->dolbeault", "bc", "dol"),
    ("BC->conj_dolbeault", "bc", "cdol"),
    ("BC->deRham", "bc", "dr"),
    ("dolbeault->A", "dol", "a"),
    ("conj_dolbeault->A", "cdol", "a"),
    ("deRham->A", "dr", "a"),
    ("BC->A", "bc", "a"),
)


def _total_quotients(c: DoubleComplex, k: int) -> dict[str, tuple[Subspace, Subspace]]:
    bds = c.bidegrees_of(k)

    def split(f):
        spaces = [f(c, b) for b in bds]
        num = c.embed(k, {b: s.numerator for b, s in zip(bds, spaces)})
        den = c.embed(k, {b: s.denominator for b, s in zip(bds, spaces)})
        return num, den

    dr = de_rham(c, k)
    return {
        "bc": split(bott_chern),
        "dol": split(dolbeault),
        "cdol": split(conj_dolbeault),
        "a": split(aeppli),
        "dr": (dr.numerator, dr.denominator),
    }


def natural_map_ranks(c: DoubleComplex, k: int) -> dict[str, int]:
    """Ranks of the maps induced by the identity between cohomologies of degree k."""
    q = _total_quotients(c, k)
    ident = Matrix.identity(c.total_dim(k))
    return {
        name: induced_map_rank(ident, q[s][0], q[s][1], q[t][0], q[t][1])
        for name, s, t in NATURAL_MAPS
    }


# -- strip support --------------------------------------------------------

def strip_support(c: DoubleComplex) -> tuple[int, int] | None:
    """Minimal ``(ell, N)`` with every nonzero ``B^{p,q}`` in ``ell*q <= p <= ell*q + N``.

    Only ``0 <= ell <= N`` is admissible.  Ties in ``N`` go to the smallest ``ell``.
    """
    supp = c.support()
    if not supp:
        return (0, 0)
    width = max(b.p for b in supp) - min(b.p for b in supp)
    best = None
    for ell in range(0, max(width, max(abs(b.p) for b in supp)) + 1):
        offs = [b.p - ell * b.q for b in supp]
        if min(offs) < 0:
            continue
        n = max(max(offs), ell)
        if best is None or n < best[1]:
            best = (ell, n)
    return best
