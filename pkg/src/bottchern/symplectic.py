"""Symplectic co-differential, the sheared double complex and Tseng-Yau cohomology.

A :class:`SymplecticModel` is a real Lie algebra given by ``d(e^i)`` on the
coframe ``e^1..e^{2n}`` together with a symplectic form ``omega``.  With
``W`` the antisymmetric coefficient matrix of ``omega`` and ``pi = W^{-1}``,

    Lambda(a) = 1/2 sum_{j,k} pi^{jk} i_{e_j} i_{e_k} a,
    d^Lambda  = Lambda d - d Lambda.

The shear complex places ``Lambda^{p-q}`` at bidegree ``(p, q)`` with
``del = d`` and ``delbar = d^Lambda``, truncated to columns ``q = 0..Q``.
Real coefficients are embedded in :class:`Scalar` with zero imaginary part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Mapping, Sequence

from .bicomplex import Bidegree, DoubleComplex, aeppli, bott_chern, validate
from .exactnum import ZERO, Scalar, as_scalar
from .exterior import Differential, Form, Monomial, basis, operator_matrix
from .linalg import (
    LinalgError,
    Matrix,
    image_basis,
    induced_map_rank,
    intersect,
    inverse,
    kernel_basis,
    quotient_dim,
    rank,
    subspace_sum,
)

__all__ = [
    "SymplecticModel",
    "SymplecticError",
    "TsengYau",
    "SymplecticBound",
    "lambda_contract",
    "d_lambda",
    "check_model",
    "validate_model",
    "shear",
    "tseng_yau",
    "shear_dimensions",
    "betti",
    "check_symplectic_bound",
    "hard_lefschetz",
]


class SymplecticError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SymplecticModel:
    name: str
    dim: int
    # i (1-based) -> ((coeff, (j, k)), ...), generators 1-based with j < k
    equations: Mapping[int, Sequence[tuple[Fraction, tuple[int, int]]]] = field(default_factory=dict)
    omega: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    provenance: str = ""

    def __post_init__(self):
        if self.dim <= 0 or self.dim % 2:
            raise SymplecticError(f"dimension must be positive and even, got {self.dim}")
        words = [w for terms in self.equations.values() for _, w in terms] + list(self.omega)
        for i in self.equations:
            if not 1 <= i <= self.dim:
                raise SymplecticError(f"equation for e^{i} but dim = {self.dim}")
        for j, k in words:
            if not (1 <= j < k <= self.dim):
                raise SymplecticError(f"word {(j, k)} must satisfy 1 <= j < k <= {self.dim}")

    @property
    def n(self) -> int:
        return self.dim // 2

    @cached_property
    def d(self) -> Differential:
        imgs = {}
        for i, terms in self.equations.items():
            f = Form()
            for c, (j, k) in terms:
                f = f + Form({(j - 1, k - 1): c})
            imgs[i - 1] = f
        return Differential(self.dim, imgs)

    @cached_property
    def omega_form(self) -> Form:
        return Form({(j - 1, k - 1): c for (j, k), c in self.omega.items()})

    @cached_property
    def omega_matrix(self) -> Matrix:
        m = self.dim
        e = [ZERO] * (m * m)
        for (j, k), c in self.omega.items():
            c = as_scalar(c)
            e[(j - 1) * m + (k - 1)] = e[(j - 1) * m + (k - 1)] + c
            e[(k - 1) * m + (j - 1)] = e[(k - 1) * m + (j - 1)] - c
        return Matrix(m, m, tuple(e))

    @property
    def nondegenerate(self) -> bool:
        return rank(self.omega_matrix) == self.dim

    @cached_property
    def poisson(self) -> Matrix:
        try:
            return inverse(self.omega_matrix)
        except LinalgError:
            raise SymplecticError("omega not invertible") from None

    def basis(self, k: int) -> list[Monomial]:
        if not 0 <= k <= self.dim:
            return []
        return basis(self.dim, k)

    # matrices between degree-k monomial bases, cached
    def _op_matrix(self, key, op, k_src: int, k_dst: int) -> Matrix:
        cache = self.__dict__.setdefault("_mats", {})
        if (key, k_src) not in cache:
            cache[(key, k_src)] = operator_matrix(op, self.basis(k_src), self.basis(k_dst))
        return cache[(key, k_src)]

    def d_matrix(self, k: int) -> Matrix:
        return self._op_matrix("d", self.d, k, k + 1)

    def dl_matrix(self, k: int) -> Matrix:
        return self._op_matrix("dl", lambda f: d_lambda(self, f), k, k - 1)

    def lefschetz_matrix(self, k: int, power: int) -> Matrix:
        def op(f):
            for _ in range(power):
                f = self.omega_form.wedge(f)
            return f

        return self._op_matrix(("L", power), op, k, k + 2 * power)

    @cached_property
    def complex(self) -> DoubleComplex:
        return shear(self, 2)


def _interior(g: int, form: Form) -> Form:
    """Contraction with the dual vector of generator g."""
    out = {}
    for mono, c in form.terms.items():
        if g in mono:
            t = mono.index(g)
            out[mono[:t] + mono[t + 1:]] = -c if t % 2 else c
    return Form(out)


def lambda_contract(m: SymplecticModel, a: Form) -> Form:
    pi = m.poisson
    half = Scalar(Fraction(1, 2))
    out = Form()
    for j in range(m.dim):
        for k in range(m.dim):
            c = pi[j, k]
            if c:
                out = out + (half * c) * _interior(j, _interior(k, a))
    return out


def d_lambda(m: SymplecticModel, a: Form) -> Form:
    return lambda_contract(m, m.d(a)) - m.d(lambda_contract(m, a))


def check_model(m: SymplecticModel) -> list[tuple[str, bool, str]]:
    """All structural identities, as ``(name, ok, detail)``; nothing is raised."""
    out = []
    for g in range(m.dim):
        ok = not m.d(m.d.images[g])
        out.append((f"d^2 = 0 on e^{g + 1}", ok, ""))
    ok = not m.d(m.omega_form)
    out.append(("d omega = 0", ok, ""))
    nondeg = m.nondegenerate
    out.append(("omega non-degenerate", nondeg, "" if nondeg else "omega not invertible"))
    if not nondeg:
        return out
    bad_sq, bad_anti = [], []
    for k in range(m.dim + 1):
        if k >= 2 and not (m.dl_matrix(k - 1) @ m.dl_matrix(k)).is_zero():
            bad_sq.append(k)
        anti = m.d_matrix(k - 1) @ m.dl_matrix(k) if k >= 1 else None
        other = m.dl_matrix(k + 1) @ m.d_matrix(k) if k < m.dim else None
        if anti is not None and other is not None:
            s = anti + other
        else:
            s = anti if anti is not None else other
        if s is not None and not s.is_zero():
            bad_anti.append(k)
    out.append(("(d^Lambda)^2 = 0", not bad_sq, f"fails in degrees {bad_sq}" if bad_sq else ""))
    out.append(("d d^Lambda + d^Lambda d = 0", not bad_anti, f"fails in degrees {bad_anti}" if bad_anti else ""))
    return out


def validate_model(m: SymplecticModel) -> None:
    for name, ok, detail in check_model(m):
        if not ok:
            raise SymplecticError(detail if name == "omega non-degenerate" else f"{name} fails {detail}".strip())


def shear(m: SymplecticModel, Q: int = 2) -> DoubleComplex:
    """Double complex ``B^{p,q} = Lambda^{p-q}`` for ``q = 0..Q``."""
    if Q < 0:
        raise ValueError("window must be non-negative")
    validate_model(m)
    dims, dl, dlb = {}, {}, {}
    for q in range(Q + 1):
        for j in range(m.dim + 1):
            b = Bidegree(j + q, q)
            dims[b] = comb(m.dim, j)
            if j < m.dim:
                dl[b] = m.d_matrix(j)
            if q < Q and j >= 1:
                dlb[b] = m.dl_matrix(j)
    c = DoubleComplex(dims, dl, dlb, None, None, name=f"{m.name} shear Q={Q}")
    validate(c)
    return c


@dataclass(frozen=True)
class TsengYau:
    k: int
    plus: int   # (ker d cap ker d^Lambda) / im d d^Lambda
    times: int  # ker d d^Lambda / (im d + im d^Lambda)


def _zero_map(rows: int, cols: int) -> Matrix:
    return Matrix.zeros(rows, cols)


def _d(m, k):
    if 0 <= k <= m.dim - 1:
        return m.d_matrix(k)
    return _zero_map(len(m.basis(k + 1)), len(m.basis(k)))


def _dl(m, k):
    if 1 <= k <= m.dim:
        return m.dl_matrix(k)
    return _zero_map(len(m.basis(k - 1)), len(m.basis(k)))


def tseng_yau(m: SymplecticModel, k: int, cross_check: bool = True, window: int = 2) -> TsengYau:
    """Both Tseng-Yau dimensions in degree k, computed on ``(Lambda^*, d, d^Lambda)``.

    With ``cross_check`` the result is compared against Bott-Chern and Aeppli
    of the shear complex on every interior column ``0 < q < window``.
    """
    ddl = _d(m, k - 1) @ _dl(m, k)  # d d^Lambda: Lambda^k -> Lambda^k
    num_plus = intersect(kernel_basis(_d(m, k)), kernel_basis(_dl(m, k)))
    plus = quotient_dim(num_plus, image_basis(ddl))
    den_times = subspace_sum(image_basis(_d(m, k - 1)), image_basis(_dl(m, k + 1)))
    times = quotient_dim(kernel_basis(ddl), den_times)
    if cross_check and 0 <= k <= m.dim:
        for bc, a in shear_dimensions(m, k, window):
            if bc != plus or a != times:
                raise ArithmeticError(f"shear complex disagrees with Tseng-Yau dimensions in degree {k}")
    return TsengYau(k, plus, times)


def shear_dimensions(m: SymplecticModel, k: int, window: int = 2) -> list[tuple[int, int]]:
    """``(h_BC, h_A)`` of the shear complex at ``(k+q, q)`` for each interior column q."""
    c = m.complex if window == 2 else shear(m, window)
    return [
        (bott_chern(c, Bidegree(k + q, q)).dim, aeppli(c, Bidegree(k + q, q)).dim)
        for q in range(1, window)
    ]


def betti(m: SymplecticModel, k: int) -> int:
    return quotient_dim(kernel_basis(_d(m, k)), image_basis(_d(m, k - 1)))


@dataclass(frozen=True)
class SymplecticBound:
    parity: int
    plus_sum: int
    times_sum: int
    bound: int

    @property
    def plus_slack(self) -> int:
        return self.bound - self.plus_sum

    @property
    def times_slack(self) -> int:
        return self.bound - self.times_sum

    @property
    def holds(self) -> bool:
        return self.plus_slack >= 0 and self.times_slack >= 0


def check_symplectic_bound(m: SymplecticModel) -> list[SymplecticBound]:
    """Parity sums of both Tseng-Yau families against ``2(2n+1) sum_h b_h``."""
    ty = [tseng_yau(m, k) for k in range(m.dim + 1)]
    bound = 2 * (m.dim + 1) * sum(betti(m, k) for k in range(m.dim + 1))
    return [
        SymplecticBound(
            parity,
            sum(t.plus for t in ty if t.k % 2 == parity),
            sum(t.times for t in ty if t.k % 2 == parity),
            bound,
        )
        for parity in (0, 1)
    ]


def hard_lefschetz(m: SymplecticModel) -> bool:
    """``[omega^k]: H^{n-k} -> H^{n+k}`` bijective for every ``k = 0..n``."""
    n = m.n
    for k in range(n + 1):
        lo, hi = n - k, n + k
        r = induced_map_rank(
            m.lefschetz_matrix(lo, k),
            kernel_basis(_d(m, lo)),
            image_basis(_d(m, lo - 1)),
            kernel_basis(_d(m, hi)),
            image_basis(_d(m, hi - 1)),
        )
        if not (r == betti(m, lo) == betti(m, hi)):
            return False
    return True
