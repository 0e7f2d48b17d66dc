"""Degree-wise invariants, upper-bound checks and del-delbar-Lemma detectors.

Notation: ``h^k_X`` is the sum of ``dim H^{p,q}_X`` over ``p + q = k`` and
``b_k`` the k-th de Rham dimension.  For a manifold-type complex with top
degree ``2n`` the refined constant is ``min(k+1, 2n-k+1)`` and

* ``S^k = const * (h^k_dbar + h^{k+1}_dbar) - h^k_A`` (slack of the Aeppli bound),
* ``N^k = h^k_A - h^k_BC``,
* ``Delta^k = h^k_A + h^k_BC - 2 b_k``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bicomplex import (
    CapabilityError,
    DoubleComplex,
    de_rham,
    natural_map_ranks,
    strip_support,
    total,
)

__all__ = [
    "DegreeReport",
    "BoundCheck",
    "AlgebraicBound",
    "LemmaVerdict",
    "refined_constant",
    "degree_report",
    "check_upper_bound_aeppli",
    "check_upper_bound_bc",
    "check_algebraic_upper_bound",
    "lemma_verdict",
    "degree_range",
]


def refined_constant(k: int, top_degree: int) -> int:
    return min(k + 1, (top_degree - k) + 1)


def _need_top(c: DoubleComplex) -> int:
    if c.top_degree is None:
        raise CapabilityError(f"complex {c.name!r} has no top degree 2n")
    return c.top_degree


def _need_manifold(c: DoubleComplex) -> int:
    if not c.has_conjugation:
        raise CapabilityError(f"complex {c.name!r} has no conjugation")
    return _need_top(c)


def degree_range(c: DoubleComplex) -> range:
    """0..2n for manifold-type complexes, else the total degrees of the support."""
    if c.top_degree is not None:
        return range(0, c.top_degree + 1)
    return c.degree_range()


@dataclass(frozen=True)
class DegreeReport:
    k: int
    betti: int
    h_dol: int
    h_conj_dol: int
    h_bc: int
    h_a: int
    s: int
    n: int
    delta: int
    refined_constant: int


def degree_report(c: DoubleComplex, k: int) -> DegreeReport:
    top = _need_top(c)
    const = refined_constant(k, top)
    h_dol = total(c, "dolbeault", k)
    h_bc, h_a = total(c, "bott_chern", k), total(c, "aeppli", k)
    b = de_rham(c, k).dim
    return DegreeReport(
        k=k,
        betti=b,
        h_dol=h_dol,
        h_conj_dol=total(c, "conj_dolbeault", k),
        h_bc=h_bc,
        h_a=h_a,
        s=const * (h_dol + total(c, "dolbeault", k + 1)) - h_a,
        n=h_a - h_bc,
        delta=h_a + h_bc - 2 * b,
        refined_constant=const,
    )


@dataclass(frozen=True)
class BoundCheck:
    lhs: int
    rhs: int

    @property
    def slack(self) -> int:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def __bool__(self):
        return self.holds


def check_upper_bound_aeppli(c: DoubleComplex, k: int) -> BoundCheck:
    """``h^k_A <= min(k+1, 2n-k+1) (h^k_dbar + h^{k+1}_dbar)``; slack is ``S^k``."""
    top = _need_manifold(c)
    rhs = refined_constant(k, top) * (total(c, "dolbeault", k) + total(c, "dolbeault", k + 1))
    return BoundCheck(total(c, "aeppli", k), rhs)


def check_upper_bound_bc(c: DoubleComplex, k: int) -> BoundCheck:
    """Bott-Chern analogue, with the Dolbeault sum shifted down to ``k-1``."""
    top = _need_manifold(c)
    rhs = refined_constant(k, top) * (total(c, "dolbeault", k) + total(c, "dolbeault", k - 1))
    return BoundCheck(total(c, "bott_chern", k), rhs)


@dataclass(frozen=True)
class AlgebraicBound:
    ell: int
    N: int
    aeppli: BoundCheck
    bott_chern: BoundCheck

    @property
    def holds(self) -> bool:
        return self.aeppli.holds and self.bott_chern.holds

    def __bool__(self):
        return self.holds


def check_algebraic_upper_bound(c: DoubleComplex, k: int) -> AlgebraicBound:
    strip = strip_support(c)
    if strip is None:
        raise CapabilityError(f"complex {c.name!r} is not supported in a strip")
    ell, N = strip

    def both(j):
        return total(c, "dolbeault", j) + total(c, "conj_dolbeault", j)

    return AlgebraicBound(
        ell,
        N,
        BoundCheck(total(c, "aeppli", k), (N + 1) * (both(k) + both(k + 1))),
        BoundCheck(total(c, "bott_chern", k), (N + 1) * (both(k) + both(k - 1))),
    )


@dataclass(frozen=True)
class LemmaVerdict:
    by_natural_map: bool
    by_delta: bool
    by_bc_equals_a: bool

    @property
    def agree(self) -> bool:
        return self.by_natural_map == self.by_delta == self.by_bc_equals_a

    @property
    def holds(self) -> bool:
        # injectivity of H_BC -> H_A is the definition; the other two are criteria
        return self.by_natural_map


def lemma_verdict(c: DoubleComplex) -> LemmaVerdict:
    ks = c.degree_range()
    injective = all(natural_map_ranks(c, k)["BC->A"] == total(c, "bott_chern", k) for k in ks)
    deltas, ns = [], []
    for k in ks:
        h_bc, h_a = total(c, "bott_chern", k), total(c, "aeppli", k)
        deltas.append(h_a + h_bc - 2 * de_rham(c, k).dim)
        ns.append(h_a - h_bc)
    return LemmaVerdict(injective, all(d == 0 for d in deltas), all(x == 0 for x in ns))
