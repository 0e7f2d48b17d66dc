"""Independent reference computations used to pin expected values.

Nothing here imports the package's linear algebra or exterior algebra.
Ranks come from sympy; wedge signs come from permutation parity; Lie
models are expanded into sympy matrices from scratch.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import sympy
from sympy.combinatorics import Permutation


def to_sympy(x):
    """Scalar / Fraction / int -> sympy number."""
    re = getattr(x, "re", x)
    im = getattr(x, "im", 0)
    return sympy.Rational(re.numerator, re.denominator) + sympy.I * sympy.Rational(
        getattr(im, "numerator", im), getattr(im, "denominator", 1)
    )


def sympy_matrix(m) -> sympy.Matrix:
    """Package Matrix -> sympy Matrix (used only to hand matrices to the oracle)."""
    return sympy.Matrix(m.rows, m.cols, [to_sympy(x) for x in m.entries])


def rank(M: sympy.Matrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return M.rank(simplify=True)


def word_sign(word) -> int:
    """Sign of the permutation sorting ``word``; 0 on a repeat."""
    if len(set(word)) != len(word):
        return 0
    order = sorted(range(len(word)), key=lambda i: word[i])
    return -1 if Permutation(order).is_odd else 1


# -- an independent exterior calculus ----------------------------------------


def d_monomial(images: dict, mono: tuple) -> dict:
    """Leibniz rule with parity from explicit permutations.

    ``images[g]`` is a dict {sorted pair: sympy coeff} for d(e^g).
    """
    out: dict = {}
    for pos, g in enumerate(mono):
        for pair, c in images.get(g, {}).items():
            word = mono[:pos] + pair + mono[pos + 1:]
            s = word_sign(word)
            if s == 0:
                continue
            key = tuple(sorted(word))
            out[key] = out.get(key, 0) + (-1) ** pos * s * c
    return {k: v for k, v in out.items() if v != 0}


class LieOracle:
    """Complex structure model; generators 0..n-1 holomorphic, n..2n-1 anti."""

    def __init__(self, n: int, eqs: dict):
        # eqs: phi index (1-based) -> [(coeff, (g1, g2))] with internal generator indices
        self.n = n
        images = {}
        for i, terms in eqs.items():
            img: dict = {}
            for c, (a, b) in terms:
                s = word_sign((a, b))
                key = tuple(sorted((a, b)))
                img[key] = img.get(key, 0) + s * to_sympy(c)
            images[i - 1] = img
            conj = {}
            for (a, b), c in img.items():
                ca, cb = self._cg(a), self._cg(b)
                s = word_sign((ca, cb))
                conj[tuple(sorted((ca, cb)))] = s * sympy.conjugate(c)
            images[i - 1 + n] = conj
        self.images = images

    def _cg(self, g):
        return g + self.n if g < self.n else g - self.n

    def basis(self, p, q):
        if not (0 <= p <= self.n and 0 <= q <= self.n):
            return []
        return [a + b for a in combinations(range(self.n), p) for b in combinations(range(self.n, 2 * self.n), q)]

    def bideg(self, mono):
        p = sum(1 for g in mono if g < self.n)
        return p, len(mono) - p

    def op(self, p, q, dp, dq) -> sympy.Matrix:
        src, dst = self.basis(p, q), self.basis(p + dp, q + dq)
        M = sympy.zeros(len(dst), len(src))
        idx = {m: i for i, m in enumerate(dst)}
        for j, mono in enumerate(src):
            for img, c in d_monomial(self.images, mono).items():
                if self.bideg(img) == (p + dp, q + dq):
                    M[idx[img], j] += c
        return M

    def dim(self, p, q):
        return len(self.basis(p, q))

    def bott_chern(self, p, q):
        stacked = self.op(p, q, 1, 0).col_join(self.op(p, q, 0, 1))
        dd = self.op(p - 1, q, 1, 0) * self.op(p - 1, q - 1, 0, 1)
        return self.dim(p, q) - rank(stacked) - rank(dd)

    def aeppli(self, p, q):
        dd = self.op(p, q + 1, 1, 0) * self.op(p, q, 0, 1)
        ims = self.op(p - 1, q, 1, 0).row_join(self.op(p, q - 1, 0, 1))
        return self.dim(p, q) - rank(dd) - rank(ims)

    def dolbeault(self, p, q):
        return self.dim(p, q) - rank(self.op(p, q, 0, 1)) - rank(self.op(p, q - 1, 0, 1))

    def total_d(self, k) -> sympy.Matrix:
        src = [m for p in range(k + 1) for m in self.basis(p, k - p)]
        dst = [m for p in range(k + 2) for m in self.basis(p, k + 1 - p)]
        M = sympy.zeros(len(dst), len(src))
        idx = {m: i for i, m in enumerate(dst)}
        for j, mono in enumerate(src):
            for img, c in d_monomial(self.images, mono).items():
                M[idx[img], j] += c
        return M

    def betti(self, k):
        dim_k = sum(self.dim(p, k - p) for p in range(k + 1))
        return dim_k - rank(self.total_d(k)) - (rank(self.total_d(k - 1)) if k >= 1 else 0)

    def totals(self, fn, k):
        return sum(fn(p, k - p) for p in range(k + 1))


# -- symplectic operators by direct expansion -------------------------------


def interior(g: int, terms: dict) -> dict:
    out: dict = {}
    for mono, c in terms.items():
        if g in mono:
            pos = mono.index(g)
            key = mono[:pos] + mono[pos + 1:]
            out[key] = out.get(key, 0) + (-1) ** pos * c
    return {k: v for k, v in out.items() if v != 0}


class SymplecticOracle:
    def __init__(self, dim: int, eqs: dict, omega: dict):
        self.m = dim
        self.images = {
            i - 1: {(j - 1, k - 1): sympy.Rational(c) for c, (j, k) in terms} for i, terms in eqs.items()
        }
        W = sympy.zeros(dim, dim)
        for (j, k), c in omega.items():
            W[j - 1, k - 1] += sympy.Rational(c)
            W[k - 1, j - 1] -= sympy.Rational(c)
        self.pi = W.inv()

    def d(self, terms: dict) -> dict:
        out: dict = {}
        for mono, c in terms.items():
            for img, e in d_monomial(self.images, mono).items():
                out[img] = out.get(img, 0) + c * e
        return {k: v for k, v in out.items() if v != 0}

    def lam(self, terms: dict) -> dict:
        # sum over j < k of pi^{jk} i_j i_k
        out: dict = {}
        for j in range(self.m):
            for k in range(j + 1, self.m):
                if self.pi[j, k] == 0:
                    continue
                for mono, c in interior(j, interior(k, terms)).items():
                    out[mono] = out.get(mono, 0) + self.pi[j, k] * c
        return {k: v for k, v in out.items() if v != 0}

    def d_lambda(self, terms: dict) -> dict:
        a, b = self.lam(self.d(terms)), self.d(self.lam(terms))
        keys = set(a) | set(b)
        return {k: a.get(k, 0) - b.get(k, 0) for k in keys if a.get(k, 0) - b.get(k, 0) != 0}

    def matrix(self, op, k_src, k_dst) -> sympy.Matrix:
        src = list(combinations(range(self.m), k_src)) if 0 <= k_src <= self.m else []
        dst = list(combinations(range(self.m), k_dst)) if 0 <= k_dst <= self.m else []
        idx = {m: i for i, m in enumerate(dst)}
        M = sympy.zeros(len(dst), len(src))
        for j, mono in enumerate(src):
            for img, c in op({mono: 1}).items():
                M[idx[img], j] += c
        return M

    def tseng_yau(self, k):
        n_k = comb(self.m, k) if 0 <= k <= self.m else 0
        d_k = self.matrix(self.d, k, k + 1)
        dl_k = self.matrix(self.d_lambda, k, k - 1)
        ddl = self.matrix(self.d, k - 1, k) * dl_k
        plus = n_k - rank(d_k.col_join(dl_k)) - rank(ddl)
        den = self.matrix(self.d, k - 1, k).row_join(self.matrix(self.d_lambda, k + 1, k))
        times = n_k - rank(ddl) - rank(den)
        return plus, times

    def betti(self, k):
        n_k = comb(self.m, k)
        return n_k - rank(self.matrix(self.d, k, k + 1)) - rank(self.matrix(self.d, k - 1, k))


# -- double complexes handed over as plain matrices -------------------------


def complex_oracle_dims(c, b):
    """(h_BC, h_A) at b from the rank-nullity formulas, ranks by sympy."""
    p, q = b
    d1, d2 = sympy_matrix(c.d1(p, q)), sympy_matrix(c.d2(p, q))
    n = c.dim(p, q)
    dd_in = sympy_matrix(c.d1(p - 1, q)) * sympy_matrix(c.d2(p - 1, q - 1))
    dd_out = sympy_matrix(c.d1(p, q + 1)) * d2
    bc = n - rank(d1.col_join(d2)) - rank(dd_in)
    ims = sympy_matrix(c.d1(p - 1, q)).row_join(sympy_matrix(c.d2(p, q - 1)))
    a = n - rank(dd_out) - rank(ims)
    return bc, a
