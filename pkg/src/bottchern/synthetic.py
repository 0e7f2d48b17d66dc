"""Hand-built and random double complexes.

Every bounded double complex is a direct sum of squares and zigzags, so
random complexes are assembled from those pieces and then hidden behind a
random change of basis.  ``conjugate_double`` adds the mirror image of a
complex together with the swap conjugation, which gives the real structure
the Bott-Chern = Aeppli detector needs.
"""

from __future__ import annotations

import random
from typing import Iterable

from .bicomplex import Bidegree, DoubleComplex
from .exactnum import ONE, ZERO, Scalar
from .linalg import Matrix, block_diag

__all__ = [
    "dot",
    "square",
    "zigzag",
    "direct_sum",
    "conjugate_double",
    "random_unimodular",
    "random_basis_change",
    "random_complex",
    "inoue_pattern",
    "one_arrow",
]


def _from_elements(elements: dict[Bidegree, list], del_arrows, delbar_arrows, name="") -> DoubleComplex:
    """Complex on named basis elements; arrows are ``(src, dst, coeff)``."""
    pos = {}
    dims = {}
    for b, names in elements.items():
        for i, e in enumerate(names):
            pos[e] = (b, i)
        dims[b] = len(names)

    def build(arrows, dp, dq):
        mats = {}
        for src, dst, c in arrows:
            (bs, j), (bt, i) = pos[src], pos[dst]
            assert bt == (bs.p + dp, bs.q + dq), (src, dst)
            m = mats.setdefault(bs, [[ZERO] * dims[bs] for _ in range(dims[bt])])
            m[i][j] = m[i][j] + c
        return {b: Matrix.from_rows(rows, dims[b]) for b, rows in mats.items()}

    return DoubleComplex(dims, build(del_arrows, 1, 0), build(delbar_arrows, 0, 1), name=name)


def dot(p: int, q: int) -> DoubleComplex:
    return DoubleComplex({(p, q): 1}, name=f"dot{(p, q)}")


def square(p: int, q: int) -> DoubleComplex:
    """x at (p,q) with del x = a, delbar x = b, delbar a = c, del b = -c."""
    b00, b10, b01, b11 = Bidegree(p, q), Bidegree(p + 1, q), Bidegree(p, q + 1), Bidegree(p + 1, q + 1)
    return _from_elements(
        {b00: ["x"], b10: ["a"], b01: ["b"], b11: ["c"]},
        [("x", "a", ONE), ("b", "c", -ONE)],
        [("x", "b", ONE), ("a", "c", ONE)],
        name=f"square{(p, q)}",
    )


def zigzag(a: int, b: int, first: int, last: int) -> DoubleComplex:
    """A zigzag cut from the staircase through (a, b).

    The staircase is y_0, x_0, y_1, x_1, ... with x_j at (a-j, b+j) and y_j at
    (a-j+1, b+j); ``del x_j = y_j`` and ``delbar x_j = y_{j+1}``.  Elements
    ``first..last`` (inclusive, counted along the staircase) are kept.
    """
    if not 0 <= first <= last:
        raise ValueError("need 0 <= first <= last")
    elements: dict = {}
    kept = set()
    for s in range(first, last + 1):
        j, is_x = divmod(s, 2)
        name = f"{'x' if is_x else 'y'}{j}"
        at = Bidegree(a - j, b + j) if is_x else Bidegree(a - j + 1, b + j)
        elements.setdefault(at, []).append(name)
        kept.add(name)
    dl, dlb = [], []
    for name in kept:
        if name[0] != "x":
            continue
        j = int(name[1:])
        if f"y{j}" in kept:
            dl.append((name, f"y{j}", ONE))
        if f"y{j + 1}" in kept:
            dlb.append((name, f"y{j + 1}", ONE))
    return _from_elements(elements, dl, dlb, name=f"zigzag{(a, b, first, last)}")


def direct_sum(parts: Iterable[DoubleComplex], name: str = "", top_degree=None) -> DoubleComplex:
    parts = list(parts)
    support = sorted({b for c in parts for b in c.dims})
    dims = {b: sum(c.dim(b) for c in parts) for b in support}
    dl, dlb, conj = {}, {}, {}
    with_conj = parts and all(c.has_conjugation for c in parts)
    for b in support:
        dl[b] = block_diag(*[c.d1(*b) for c in parts])
        dlb[b] = block_diag(*[c.d2(*b) for c in parts])
        if with_conj:
            conj[b] = block_diag(*[c.sigma(*b) for c in parts])
    return DoubleComplex(dims, dl, dlb, conj if with_conj else None, top_degree, name)


def conjugate_double(c: DoubleComplex, name: str | None = None) -> DoubleComplex:
    """``B + Bbar`` with ``Bbar^{p,q} = B^{q,p}`` and the block-swap conjugation."""
    support = sorted(set(c.dims) | {Bidegree(q, p) for p, q in c.dims})
    dims, dl, dlb, conj = {}, {}, {}, {}
    for b in support:
        p, q = b
        dims[b] = c.dim(p, q) + c.dim(q, p)
        dl[b] = block_diag(c.d1(p, q), c.d2(q, p).conj())
        dlb[b] = block_diag(c.d2(p, q), c.d1(q, p).conj())
        n1, n2 = c.dim(p, q), c.dim(q, p)
        # (p,q) = B^{p,q} + B^{q,p}  ->  (q,p) = B^{q,p} + B^{p,q}: swap blocks
        e = [ZERO] * ((n1 + n2) * (n1 + n2))
        for i in range(n1):
            e[(n2 + i) * (n1 + n2) + i] = ONE
        for i in range(n2):
            e[i * (n1 + n2) + n1 + i] = ONE
        conj[b] = Matrix(n1 + n2, n1 + n2, tuple(e))
    return DoubleComplex(dims, dl, dlb, conj, c.top_degree, name or f"{c.name}+conj")


_UNITS = (ONE, -ONE, Scalar(0, 1), Scalar(0, -1))


def random_unimodular(n: int, rng: random.Random, steps: int | None = None, gaussian: bool = True):
    """Random invertible ``P`` with entries in Z[i], returned with its inverse."""
    P = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    Pi = [row[:] for row in P]
    if n == 0:
        return Matrix.zeros(0, 0), Matrix.zeros(0, 0)
    for _ in range(steps if steps is not None else 2 * n + 1):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            u = rng.choice(_UNITS if gaussian else _UNITS[:2])
            for r in range(n):
                P[r][i] = P[r][i] * u
            Pi[i] = [x * u.inverse() for x in Pi[i]]
            continue
        c = Scalar(rng.randint(-2, 2), rng.randint(-1, 1) if gaussian else 0)
        if not c:
            continue
        # column op on P: col_j += c col_i; row op on P^{-1}: row_i -= c row_j
        for r in range(n):
            P[r][j] = P[r][j] + c * P[r][i]
        Pi[i] = [x - c * y for x, y in zip(Pi[i], Pi[j])]
    return Matrix.from_rows(P, n), Matrix.from_rows(Pi, n)


def random_basis_change(c: DoubleComplex, rng: random.Random, gaussian: bool = True) -> DoubleComplex:
    P, Pi = {}, {}
    for b in c.support():
        P[b], Pi[b] = random_unimodular(c.dim(b), rng, gaussian=gaussian)
    return c.change_basis(P, Pi)


def _random_piece(rng: random.Random, n: int, lemma_only: bool) -> DoubleComplex:
    kind = rng.choice(["dot", "square"] if lemma_only else ["dot", "square", "zigzag", "zigzag"])
    if kind == "dot":
        return dot(rng.randint(0, n), rng.randint(0, n))
    if kind == "square":
        return square(rng.randint(0, n - 1), rng.randint(0, n - 1))
    first = rng.randint(0, 3)
    last = first + rng.randint(1, 3)
    return zigzag(rng.randint(0, n), rng.randint(0, n), first, last)


def random_complex(rng: random.Random, n: int | None = None, max_dim: int = 4, pieces: int | None = None) -> DoubleComplex:
    """Random first-quadrant conjugation-equipped complex in the box ``[0,n]^2``.

    Built as ``conjugate_double`` of a sum of dots, squares and zigzags (about
    half the time dots and squares only), then a random Z[i] change of basis.
    At most ``max_dim`` per bidegree.
    """
    if n is None:
        n = rng.choice([1, 2])
    lemma_only = rng.random() < 0.4
    target = pieces if pieces is not None else rng.randint(1, 5)
    chosen: list[DoubleComplex] = []
    load: dict = {}
    for _ in range(10 * target):
        if len(chosen) == target:
            break
        piece = _random_piece(rng, n, lemma_only)
        if any(not (0 <= b.p <= n and 0 <= b.q <= n) for b in piece.dims):
            continue
        extra = {}
        for b, d in piece.dims.items():
            extra[b] = extra.get(b, 0) + d
            mirror = Bidegree(b.q, b.p)
            extra[mirror] = extra.get(mirror, 0) + d
        if any(load.get(b, 0) + d > max_dim for b, d in extra.items()):
            continue
        for b, d in extra.items():
            load[b] = load.get(b, 0) + d
        chosen.append(piece)
    if not chosen:
        chosen = [dot(0, 0)]
    base = conjugate_double(direct_sum(chosen), name="random")
    return random_basis_change(base, rng)


def inoue_pattern() -> DoubleComplex:
    """Complex surface-type complex with the cohomology pattern of an Inoue surface.

    Dots at (0,0) and (2,2), a V-shaped zigzag ``delbar x = z = del y`` through
    (1,0), (0,1), (1,1), and its dual ``del w = u``, ``delbar w = v`` through
    (1,1), (2,1), (1,2).  Conjugation swaps x<->y and u<->v, fixes z and w.
    """
    B = Bidegree
    elements = {
        B(0, 0): ["o"], B(1, 0): ["x"], B(0, 1): ["y"], B(1, 1): ["z", "w"],
        B(2, 1): ["u"], B(1, 2): ["v"], B(2, 2): ["t"],
    }
    c = _from_elements(
        elements,
        [("y", "z", ONE), ("w", "u", ONE)],
        [("x", "z", ONE), ("w", "v", ONE)],
    )
    swap = {"o": "o", "x": "y", "y": "x", "z": "z", "w": "w", "u": "v", "v": "u", "t": "t"}
    conj = {}
    for b, names in elements.items():
        tgt = elements[B(b.q, b.p)]
        rows = [[ONE if swap[s] == t else ZERO for s in names] for t in tgt]
        conj[b] = Matrix.from_rows(rows, len(names))
    return DoubleComplex(c.dims, c.del_, c.delbar, conj, top_degree=4, name="inoue-pattern")


def one_arrow() -> DoubleComplex:
    """``delbar: B^{0,0} -> B^{0,1}`` the identity, nothing else."""
    return DoubleComplex({(0, 0): 1, (0, 1): 1}, {}, {(0, 0): Matrix.identity(1)}, name="one-arrow")
