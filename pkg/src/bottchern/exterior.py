"""Exterior algebras on finitely many degree-one generators.

Generators are integers ``0..m-1``; a monomial is a strictly increasing tuple
of generators and a :class:`Form` is a finite linear combination of monomials.
Koszul signs come from sorting a word into increasing order.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from .exactnum import ONE, ZERO, Scalar, as_scalar
from .linalg import Matrix

Monomial = tuple


def sort_sign(word: Iterable[int]) -> tuple[int, Monomial]:
    """Sign and sorted monomial of a wedge word; sign 0 on a repeated generator."""
    w = list(word)
    if len(set(w)) != len(w):
        return 0, ()
    inversions = 0
    for i in range(len(w)):
        wi = w[i]
        for j in range(i + 1, len(w)):
            if w[j] < wi:
                inversions += 1
    return (-1 if inversions % 2 else 1), tuple(sorted(w))


class Form:
    """A finite sum ``sum c_I e^I`` with :class:`Scalar` coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                sign, m = sort_sign(mono)
                if sign == 0:
                    continue
                prev = clean.get(m, ZERO)
                s = prev + (c if sign == 1 else -c)
                if s:
                    clean[m] = s
                else:
                    clean.pop(m, None)
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "Form":
        f = object.__new__(cls)
        f.terms = terms
        return f

    @classmethod
    def monomial(cls, mono: Iterable[int], coeff=ONE) -> "Form":
        return cls({tuple(mono): coeff})

    @classmethod
    def constant(cls, c=ONE) -> "Form":
        return cls({(): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "Form") -> "Form":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Form._raw(out)

    def __neg__(self) -> "Form":
        return Form._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __rmul__(self, s) -> "Form":
        s = as_scalar(s)
        if not s:
            return Form._raw({})
        return Form._raw({m: s * c for m, c in self.terms.items()})

    __mul__ = __rmul__

    def wedge(self, other: "Form") -> "Form":
        out: dict = {}
        for m1, c1 in self.terms.items():
            s1 = set(m1)
            for m2, c2 in other.terms.items():
                if s1.intersection(m2):
                    continue
                sign, m = sort_sign(m1 + m2)
                c = c1 * c2
                if sign < 0:
                    c = -c
                s = out.get(m, ZERO) + c
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Form._raw(out)

    __xor__ = wedge

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def coefficient(self, mono: Monomial) -> Scalar:
        return self.terms.get(tuple(mono), ZERO)

    def conj_coefficients(self) -> "Form":
        return Form._raw({m: c.conjugate() for m, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "Form(0)"
        parts = [f"{c}*e{''.join(str(g) for g in m) or '()'}" for m, c in sorted(self.terms.items())]
        return "Form(" + " + ".join(parts) + ")"


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def basis(num_generators: int, degree: int) -> list[Monomial]:
    return list(combinations(range(num_generators), degree))


class Differential:
    """Leibniz extension of generator differentials ``d(e^g)``."""

    def __init__(self, num_generators: int, generator_images: Mapping[int, Form]):
        self.m = num_generators
        self.images = {g: generator_images.get(g, Form()) for g in range(num_generators)}
        self._cache: dict = {}

    def on_monomial(self, mono: Monomial) -> Form:
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        out = Form()
        for j, g in enumerate(mono):
            dg = self.images[g]
            if not dg:
                continue
            piece = Form.monomial(mono[:j]).wedge(dg).wedge(Form.monomial(mono[j + 1:]))
            out = out + (piece if j % 2 == 0 else -piece)
        self._cache[mono] = out
        return out

    def __call__(self, form: Form) -> Form:
        out = Form()
        for mono, c in form.terms.items():
            out = out + c * self.on_monomial(mono)
        return out


def operator_matrix(op, src: list[Monomial], dst: list[Monomial]) -> Matrix:
    """Matrix of a linear operator on forms between two monomial bases."""
    index = {m: i for i, m in enumerate(dst)}
    rows, cols = len(dst), len(src)
    e = [ZERO] * (rows * cols)
    for j, mono in enumerate(src):
        for m, c in op(Form.monomial(mono)).terms.items():
            i = index.get(m)
            if i is None:
                raise ValueError(f"operator output {m} lies outside the target basis")
            e[i * cols + j] = c
    return Matrix(rows, cols, tuple(e))


def vector_to_form(vec, monos: list[Monomial]) -> Form:
    return Form._raw({m: c for m, c in zip(monos, vec) if c})


def form_to_vector(form: Form, monos: list[Monomial]) -> list[Scalar]:
    index = {m: i for i, m in enumerate(monos)}
    v = [ZERO] * len(monos)
    for m, c in form.terms.items():
        if m not in index:
            raise ValueError(f"monomial {m} not in basis")
        v[index[m]] = c
    return v
