"""Invariant-form models of complex nilmanifolds and solvmanifolds.

A :class:`StructureModel` lists ``d(phi^i)`` for the invariant (1,0)-coframe
``phi^1..phi^n``; ``d(phibar^i)`` is the conjugate.  Internally generator
``a-1`` is ``phi^a`` and ``n+a-1`` is ``phibar^a``, so sorting a monomial puts
holomorphic indices first, each block increasing.

Compiling yields a conjugation-equipped :class:`DoubleComplex` on the full
exterior algebra (``dim B^{p,q} = C(n,p) C(n,q)``).  The module also provides
integration against the top monomial and the Bott-Chern wedge pairing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .bicomplex import Bidegree, DoubleComplex, bott_chern, validate
from .exactnum import ONE, ZERO, Scalar, as_scalar
from .exterior import Differential, Form, Monomial, form_to_vector, sort_sign, vector_to_form
from .linalg import Matrix, quotient_representatives, rank

__all__ = [
    "StructureModel",
    "StructureError",
    "StokesError",
    "PairingMatrix",
    "compile_model",
    "wedge",
    "integrate",
    "stokes_check",
    "kss_pairing",
    "kss_property",
    "parse_generator",
]


class StructureError(ValueError):
    pass


class StokesError(StructureError):
    pass


def parse_generator(token: str, n: int) -> int:
    """``"a"`` is phi^a, ``"ca"`` is phibar^a (1-based)."""
    t = str(token).strip()
    anti = t.startswith("c")
    try:
        a = int(t[1:] if anti else t)
    except ValueError:
        raise StructureError(f"bad generator token {token!r}") from None
    if not 1 <= a <= n:
        raise StructureError(f"generator index {a} outside 1..{n}")
    return (n if anti else 0) + a - 1


def generator_token(g: int, n: int) -> str:
    return f"c{g - n + 1}" if g >= n else str(g + 1)


@dataclass(frozen=True, eq=False)
class StructureModel:
    name: str
    n: int
    # i (1-based) -> ((coeff, (g1, g2)), ...) with internal generator indices
    equations: Mapping[int, Sequence[tuple[Scalar, tuple[int, int]]]] = field(default_factory=dict)
    provenance: str = ""

    @classmethod
    def from_tokens(cls, name: str, n: int, eqs: Mapping[int, Sequence[tuple[object, tuple[str, str]]]], provenance: str = ""):
        """Build from human-readable words, e.g. ``{3: [(-1, ("1", "2"))]}``."""
        parsed = {}
        for i, terms in eqs.items():
            parsed[int(i)] = tuple(
                (as_scalar(c), (parse_generator(w[0], n), parse_generator(w[1], n))) for c, w in terms
            )
        return cls(name, n, parsed, provenance)

    def __post_init__(self):
        for i, terms in self.equations.items():
            if not 1 <= i <= self.n:
                raise StructureError(f"equation for phi^{i} but n = {self.n}")
            for _, word in terms:
                if len(word) != 2:
                    raise StructureError("structure equations must have words of length 2")

    @property
    def num_generators(self) -> int:
        return 2 * self.n

    def generator_bidegree(self, g: int) -> tuple[int, int]:
        return (1, 0) if g < self.n else (0, 1)

    def conj_generator(self, g: int) -> int:
        return g + self.n if g < self.n else g - self.n

    @cached_property
    def generator_images(self) -> dict[int, Form]:
        imgs = {}
        for i in range(1, self.n + 1):
            f = Form()
            for c, word in self.equations.get(i, ()):
                f = f + Form({tuple(word): c})
            imgs[i - 1] = f
        for g in range(self.n):
            imgs[g + self.n] = self.conjugate_form(imgs[g])
        return imgs

    @cached_property
    def d(self) -> Differential:
        return Differential(self.num_generators, self.generator_images)

    def conjugate_form(self, form: Form) -> Form:
        """Complex conjugate: swap phi and phibar, conjugate coefficients."""
        out = {}
        for mono, c in form.terms.items():
            sign, m = sort_sign(self.conj_generator(g) for g in mono)
            c = c.conjugate()
            out[m] = out.get(m, ZERO) + (c if sign > 0 else -c)
        return Form(out)

    def bidegree(self, mono: Monomial) -> tuple[int, int]:
        p = sum(1 for g in mono if g < self.n)
        return p, len(mono) - p

    def basis(self, p: int, q: int) -> list[Monomial]:
        if not (0 <= p <= self.n and 0 <= q <= self.n):
            return []
        holo = range(self.n)
        anti = range(self.n, 2 * self.n)
        return [I + J for I in combinations(holo, p) for J in combinations(anti, q)]

    def split(self, form: Form) -> dict[tuple[int, int], Form]:
        parts: dict = {}
        for mono, c in form.terms.items():
            parts.setdefault(self.bidegree(mono), {})[mono] = c
        return {b: Form._raw(t) for b, t in parts.items()}

    def del_(self, form: Form) -> Form:
        return self._component(form, (1, 0))

    def delbar(self, form: Form) -> Form:
        return self._component(form, (0, 1))

    def _component(self, form: Form, shift) -> Form:
        out = Form()
        for mono, c in form.terms.items():
            p, q = self.bidegree(mono)
            part = self.split(self.d.on_monomial(mono)).get((p + shift[0], q + shift[1]))
            if part:
                out = out + c * part
        return out

    def check_d_squared(self) -> list[tuple[str, bool]]:
        out = []
        for g in range(self.n):
            ok = not self.d(self.generator_images[g])
            out.append((f"phi^{g + 1}", ok))
        return out

    def check_integrable(self) -> list[tuple[str, bool]]:
        """d(phi^i) must have no (0,2) part, so that d = del + delbar."""
        out = []
        for g in range(self.n):
            bad = any(self.bidegree(m) == (0, 2) for m in self.generator_images[g].terms)
            out.append((f"phi^{g + 1}", not bad))
        return out

    def form_from_vector(self, vec, p: int, q: int) -> Form:
        return vector_to_form(vec, self.basis(p, q))

    def vector_from_form(self, form: Form, p: int, q: int) -> list[Scalar]:
        return form_to_vector(form, self.basis(p, q))

    @cached_property
    def complex(self) -> DoubleComplex:
        return compile_model(self)


def compile_model(m: StructureModel) -> DoubleComplex:
    """Split the Leibniz-extended d by bidegree into a validated double complex."""
    for gen, ok in m.check_d_squared():
        if not ok:
            raise StructureError(f"d^2 != 0 on generator {gen} of model {m.name!r}")
    for gen, ok in m.check_integrable():
        if not ok:
            raise StructureError(f"d({gen}) has a (0,2) component: structure is not integrable")
    n = m.n
    dims, dl, dlb, conj = {}, {}, {}, {}
    bases = {(p, q): m.basis(p, q) for p in range(n + 1) for q in range(n + 1)}
    index = {b: {mono: i for i, mono in enumerate(bs)} for b, bs in bases.items()}
    for (p, q), src in bases.items():
        dims[Bidegree(p, q)] = len(src)
        tgt1, tgt2 = bases.get((p + 1, q), []), bases.get((p, q + 1), [])
        e1 = [ZERO] * (len(tgt1) * len(src))
        e2 = [ZERO] * (len(tgt2) * len(src))
        for j, mono in enumerate(src):
            for img, c in m.d.on_monomial(mono).terms.items():
                b = m.bidegree(img)
                if b == (p + 1, q):
                    e1[index[b][img] * len(src) + j] = c
                elif b == (p, q + 1):
                    e2[index[b][img] * len(src) + j] = c
                else:
                    raise StructureError(f"d maps bidegree {(p, q)} into {b}")
        if tgt1:
            dl[Bidegree(p, q)] = Matrix(len(tgt1), len(src), tuple(e1))
        if tgt2:
            dlb[Bidegree(p, q)] = Matrix(len(tgt2), len(src), tuple(e2))
        # conjugation: (p,q) -> (q,p), monomial swap with Koszul sign
        dst = bases[(q, p)]
        s = [ZERO] * (len(dst) * len(src))
        for j, mono in enumerate(src):
            sign, img = sort_sign(m.conj_generator(g) for g in mono)
            s[index[(q, p)][img] * len(src) + j] = ONE if sign > 0 else -ONE
        conj[Bidegree(p, q)] = Matrix(len(dst), len(src), tuple(s))
    c = DoubleComplex(dims, dl, dlb, conj, top_degree=2 * n, name=m.name)
    validate(c)
    return c


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def top_monomial(m: StructureModel) -> Monomial:
    return tuple(range(2 * m.n))


def integrate(m: StructureModel, a: Form) -> Scalar:
    """Coefficient of phi^{1..n} ^ phibar^{1..n}."""
    return a.coefficient(top_monomial(m))


def stokes_check(m: StructureModel) -> bool:
    """True iff every exact top-degree form integrates to zero."""
    top = top_monomial(m)
    for mono in combinations(range(2 * m.n), 2 * m.n - 1):
        if m.d.on_monomial(mono).coefficient(top):
            return False
    return True


@dataclass(frozen=True)
class PairingMatrix:
    k: int
    matrix: Matrix
    left: list[Form]   # Bott-Chern representatives in degree k
    right: list[Form]  # ... and in degree 2n - k

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    @property
    def non_degenerate(self) -> bool:
        r, c = self.matrix.shape
        return r == c and self.rank == r


def bc_representatives(m: StructureModel, k: int) -> list[Form]:
    """Forms whose classes give a basis of the degree-k Bott-Chern cohomology."""
    c = m.complex
    reps = []
    for b in c.bidegrees_of(k):
        h = bott_chern(c, b)
        cols = quotient_representatives(h.numerator, h.denominator)
        reps.extend(m.form_from_vector(v, *b) for v in cols.columns())
    return reps


def kss_pairing(m: StructureModel, k: int) -> PairingMatrix:
    if not stokes_check(m):
        raise StokesError(f"integration of exact top forms is nonzero on {m.name!r}; pairing undefined")
    left = bc_representatives(m, k)
    right = bc_representatives(m, 2 * m.n - k)
    entries = tuple(integrate(m, a.wedge(b)) for a in left for b in right)
    return PairingMatrix(k, Matrix(len(left), len(right), entries), left, right)


def kss_property(m: StructureModel) -> bool:
    """Non-degeneracy of the Bott-Chern wedge pairing in every degree."""
    return all(kss_pairing(m, k).non_degenerate for k in range(2 * m.n + 1))
