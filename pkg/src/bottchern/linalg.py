"""Dense exact linear algebra over Q(i).

Matrices are small (a few hundred entries at most for the built-in models), so
everything is plain Python lists of :class:`~bottchern.exactnum.Scalar` and
Gaussian elimination.  Pivoting always takes the first nonzero entry in column
order, which makes every returned basis deterministic.

Subspaces are stored as matrices whose columns form a basis.  Two subspaces
are compared by mutual containment, never by their bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactnum import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Matrix",
    "Subspace",
    "LinalgError",
    "DimensionMismatch",
    "NotContained",
    "NotWellDefined",
    "rank",
    "rref",
    "kernel_basis",
    "image_basis",
    "subspace_sum",
    "intersect",
    "quotient_dim",
    "quotient_representatives",
    "induced_map_rank",
    "contains",
    "same_subspace",
    "inverse",
]


class LinalgError(ValueError):
    pass


class DimensionMismatch(LinalgError):
    pass


class NotContained(LinalgError):
    pass


class NotWellDefined(LinalgError):
    pass


@dataclass(frozen=True, eq=False)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        e = [ZERO] * (n * n)
        for i in range(n):
            e[i * n + i] = ONE
        return cls(n, n, tuple(e))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(as_scalar(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise ValueError("column length does not match row count")
        ncols = len(columns)
        e = [ZERO] * (rows * ncols)
        for j, col in enumerate(columns):
            for i, x in enumerate(col):
                e[i * ncols + j] = as_scalar(x)
        return cls(rows, ncols, tuple(e))

    # -- access ---------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list:
        return list(self.entries[j::self.cols]) if self.cols else []

    def to_rows(self) -> list[list]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- algebra --------------------------------------------------------
    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = [ZERO] * (n * p)
        # skip zero entries: the compiled models are very sparse
        brows = [[(j, b[k * p + j]) for j in range(p) if b[k * p + j]] for k in range(m)]
        for i in range(n):
            acc = {}
            for k in range(m):
                x = a[i * m + k]
                if not x:
                    continue
                for j, y in brows[k]:
                    t = x * y
                    acc[j] = acc[j] + t if j in acc else t
            for j, v in acc.items():
                out[i * p + j] = v
        return Matrix(n, p, tuple(out))

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        out = []
        c = self.cols
        for i in range(self.rows):
            s = ZERO
            for j in range(c):
                x = self.entries[i * c + j]
                if x and v[j]:
                    s = s + x * v[j]
            out.append(s)
        return out

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, s) -> "Matrix":
        s = as_scalar(s)
        return Matrix(self.rows, self.cols, tuple(s * x for x in self.entries))

    def conj(self) -> "Matrix":
        """Entrywise complex conjugate."""
        return Matrix(self.rows, self.cols, tuple(x.conjugate() for x in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self.to_rows(), self.cols) if self.rows else Matrix.zeros(self.cols, 0)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.to_rows())
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def hstack(*ms: Matrix, rows: int | None = None) -> Matrix:
    if rows is None:
        if not ms:
            raise ValueError("hstack of nothing needs an explicit row count")
        rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise DimensionMismatch("hstack row counts differ")
    cols = sum(m.cols for m in ms)
    out = []
    for i in range(rows):
        for m in ms:
            out.extend(m.entries[i * m.cols:(i + 1) * m.cols])
    return Matrix(rows, cols, tuple(out))


def vstack(*ms: Matrix, cols: int | None = None) -> Matrix:
    if cols is None:
        if not ms:
            raise ValueError("vstack of nothing needs an explicit column count")
        cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise DimensionMismatch("vstack column counts differ")
    return Matrix(sum(m.rows for m in ms), cols, tuple(x for m in ms for x in m.entries))


def block_diag(*ms: Matrix) -> Matrix:
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    out = [ZERO] * (rows * cols)
    r0 = c0 = 0
    for m in ms:
        for i in range(m.rows):
            for j in range(m.cols):
                out[(r0 + i) * cols + c0 + j] = m.entries[i * m.cols + j]
        r0 += m.rows
        c0 += m.cols
    return Matrix(rows, cols, tuple(out))


# -- elimination ---------------------------------------------------------

def _eliminate(rows: list[list], ncols: int, reduced: bool) -> list[int]:
    """Row-reduce ``rows`` in place; return pivot columns.

    Pivot: first row (at or below the current pivot row) with a nonzero
    entry, scanning columns left to right.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c]:
                break
        else:
            continue
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        pinv = prow[c].inverse()
        if pinv != ONE:
            prow = [x * pinv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c + 1, ncols) if prow[j]]
        targets = range(nrows) if reduced else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            row[c] = ZERO
            for j in nz:
                row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = m.to_rows()
    return len(_eliminate(rows, m.cols, reduced=False))


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = m.to_rows()
    piv = _eliminate(rows, m.cols, reduced=True)
    return Matrix(m.rows, m.cols, tuple(x for r in rows for x in r)), piv


class Subspace:
    """A subspace of ``Q(i)^ambient_dim`` given by a basis (matrix columns)."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Matrix, *, _trusted: bool = False):
        if basis.rows != ambient_dim:
            raise DimensionMismatch(
                f"basis vectors have length {basis.rows}, ambient dimension is {ambient_dim}"
            )
        if not _trusted and rank(basis) != basis.cols:
            raise LinalgError("basis columns are linearly dependent")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, Matrix.zeros(n, 0), _trusted=True)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n), _trusted=True)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        """Span of arbitrary (possibly dependent) vectors."""
        m = Matrix.from_columns(list(vectors), ambient_dim)
        return image_basis(m)

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[list]:
        return self.basis.columns()

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel_basis(m: Matrix) -> Subspace:
    n = m.cols
    if m.rows == 0:
        return Subspace.full(n)
    r, piv = rref(m)
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    cols = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, pc in enumerate(piv):
            x = r[i, f]
            if x:
                v[pc] = -x
        cols.append(v)
    return Subspace(n, Matrix.from_columns(cols, n), _trusted=True)


def image_basis(m: Matrix) -> Subspace:
    """Column space of ``m``, spanned by its pivot columns."""
    if m.cols == 0 or m.rows == 0:
        return Subspace.zero(m.rows)
    rows = m.to_rows()
    piv = _eliminate(rows, m.cols, reduced=False)
    return Subspace(m.rows, Matrix.from_columns([m.column(j) for j in piv], m.rows), _trusted=True)


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}"
        )


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    if v.dim == 0:
        return u
    if u.dim == 0:
        return v
    return image_basis(hstack(u.basis, v.basis))


def intersect(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    n = u.ambient_dim
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(n)
    k = kernel_basis(hstack(u.basis, -v.basis))
    # (a, b) -> a is injective on this kernel, so U*a stays independent
    coeffs = [vec[:u.dim] for vec in k.vectors()]
    cols = [u.basis.apply(a) for a in coeffs]
    return Subspace(n, Matrix.from_columns(cols, n), _trusted=True)


def contains(big: Subspace, small: Subspace) -> bool:
    _check_ambient(big, small)
    if small.dim == 0:
        return True
    if small.dim > big.dim:
        return False
    return rank(hstack(big.basis, small.basis)) == big.dim


def same_subspace(u: Subspace, v: Subspace) -> bool:
    return u.dim == v.dim and contains(u, v) and contains(v, u)


def quotient_dim(big: Subspace, small: Subspace) -> int:
    if not contains(big, small):
        raise NotContained("denominator is not contained in numerator")
    return big.dim - small.dim


def quotient_representatives(big: Subspace, small: Subspace) -> Matrix:
    """Columns of ``big.basis`` completing a basis of ``small`` to one of ``big``.

    Their classes form a basis of ``big/small``.
    """
    if not contains(big, small):
        raise NotContained("denominator is not contained in numerator")
    n = big.ambient_dim
    if big.dim == small.dim:
        return Matrix.zeros(n, 0)
    rows = hstack(small.basis, big.basis).to_rows()
    piv = _eliminate(rows, small.dim + big.dim, reduced=False)
    keep = [j - small.dim for j in piv if j >= small.dim]
    return Matrix.from_columns([big.basis.column(j) for j in keep], n)


def _map_subspace(m: Matrix, s: Subspace) -> Matrix:
    if s.dim == 0:
        return Matrix.zeros(m.rows, 0)
    return m @ s.basis


def induced_map_rank(
    map: Matrix,
    src_num: Subspace,
    src_den: Subspace,
    dst_num: Subspace,
    dst_den: Subspace,
) -> int:
    """Rank of the map ``src_num/src_den -> dst_num/dst_den`` induced by ``map``."""
    if map.cols != src_num.ambient_dim or map.rows != dst_num.ambient_dim:
        raise DimensionMismatch(
            f"map of shape {map.shape} between ambient spaces "
            f"{src_num.ambient_dim} and {dst_num.ambient_dim}"
        )
    _check_ambient(src_num, src_den)
    _check_ambient(dst_num, dst_den)
    img_num = _map_subspace(map, src_num)
    img_den = _map_subspace(map, src_den)
    if not contains(dst_den, Subspace.span(img_den.columns(), map.rows)):
        raise NotWellDefined("map does not send the source denominator into the target denominator")
    if not contains(dst_num, Subspace.span(img_num.columns(), map.rows)):
        raise NotWellDefined("map does not send the source numerator into the target numerator")
    if img_num.cols == 0:
        return 0
    return rank(hstack(img_num, dst_den.basis)) - dst_den.dim


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix via elimination on ``[m | 1]``."""
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices are invertible")
    n = m.rows
    rows = [r + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.to_rows())]
    piv = _eliminate(rows, 2 * n, reduced=True)
    if piv[:n] != list(range(n)):
        raise LinalgError("matrix is singular")
    return Matrix(n, n, tuple(x for r in rows for x in r[n:]))
