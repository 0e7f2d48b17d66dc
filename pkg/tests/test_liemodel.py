import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottchern.bicomplex import aeppli, bott_chern, validate
from bottchern.catalog import builtins, lookup
from bottchern.diagnostics import lemma_verdict
from bottchern.exactnum import ONE, ZERO, Scalar
from bottchern.exterior import Form, sort_sign
from bottchern.liemodel import (
    StokesError,
    StructureError,
    StructureModel,
    bc_representatives,
    compile_model,
    integrate,
    kss_pairing,
    kss_property,
    parse_generator,
    stokes_check,
    wedge,
)
from oracles import word_sign

STRUCTURES = [e for e in builtins() if e.kind == "complex-structure"]


def model(key):
    return lookup(key).payload


def phi(m, *tokens):
    return Form.monomial([parse_generator(t, m.n) for t in tokens])


def test_compile_iwasawa():
    m = model("iwasawa")
    c = compile_model(m)
    validate(c)
    assert [c.total_dim(k) for k in range(7)] == [1, 6, 15, 20, 15, 6, 1]
    assert sum(c.total_dim(k) for k in range(7)) == 64


def test_compile_torus_has_zero_differentials():
    c = model("torus6").complex
    assert all(c.d1(*b).is_zero() and c.d2(*b).is_zero() for b in c.support())


def test_kodaira_split():
    m = model("kodaira-primary")
    p2 = phi(m, "2")
    assert not m.del_(p2)
    assert m.delbar(p2) == phi(m, "1", "c1")


def test_wedge_examples():
    m = model("iwasawa")
    assert not wedge(phi(m, "1"), phi(m, "1"))
    assert wedge(phi(m, "1"), phi(m, "c1")) == phi(m, "1", "c1")
    assert wedge(phi(m, "c1"), phi(m, "1")) == -phi(m, "1", "c1")
    assert wedge(phi(m, "1") + phi(m, "2"), phi(m, "3")) == phi(m, "1", "3") + phi(m, "2", "3")


def test_integrate_examples():
    m = model("iwasawa")
    top = Form.monomial(range(6))
    assert integrate(m, top) == ONE
    assert integrate(m, Form.monomial(range(5))) == ZERO
    for key in ("iwasawa", "kodaira-primary", "torus4"):
        assert stokes_check(model(key))


def test_d_squared_rejected():
    bad = StructureModel.from_tokens("bad", 3, {1: [(1, ("1", "2"))], 2: [(1, ("2", "3"))]})
    with pytest.raises(StructureError, match="phi\\^1"):
        compile_model(bad)


def test_non_integrable_rejected():
    bad = StructureModel.from_tokens("bad", 3, {3: [(1, ("c1", "c2"))]})
    with pytest.raises(StructureError, match="\\(0,2\\)"):
        compile_model(bad)


def test_bad_tokens():
    with pytest.raises(StructureError):
        StructureModel.from_tokens("x", 2, {1: [(1, ("1", "5"))]})
    with pytest.raises(StructureError):
        StructureModel.from_tokens("x", 2, {1: [(1, ("1", "zz"))]})


def test_kss_examples():
    t6 = kss_pairing(model("torus6"), 1)
    assert t6.rank == 6 and t6.non_degenerate
    iw = kss_pairing(model("iwasawa"), 1)
    # 4 classes against 6: full row rank, yet the right kernel is nonzero
    assert iw.matrix.shape == (4, 6)
    assert iw.rank == 4
    assert not iw.non_degenerate
    for key in ("iwasawa", "kodaira-primary", "torus4"):
        m = model(key)
        k0 = kss_pairing(m, 0)
        assert k0.matrix.rows == 1 and k0.rank == 1


def test_kss_property_examples():
    assert kss_property(model("torus2"))
    assert kss_property(model("torus4"))
    assert not kss_property(model("iwasawa"))
    assert not kss_property(model("kodaira-primary"))


def test_kss_requires_stokes():
    # d phi^1 = phi^1 ^ phi^2 is a non-unimodular (solvable, not nilpotent) algebra
    m = StructureModel.from_tokens("affine", 2, {1: [(1, ("1", "2"))]})
    assert not stokes_check(m)
    with pytest.raises(StokesError):
        kss_pairing(m, 1)


@pytest.mark.parametrize("entry", STRUCTURES, ids=lambda e: e.key)
def test_kss_agrees_with_lemma(entry):
    assert kss_property(entry.payload) == lemma_verdict(entry.complex).holds


@pytest.mark.parametrize("entry", STRUCTURES, ids=lambda e: e.key)
def test_schweitzer_duality_on_catalog(entry):
    c, n = entry.complex, entry.payload.n
    for p in range(n + 1):
        for q in range(n + 1):
            assert bott_chern(c, p, q).dim == aeppli(c, n - q, n - p).dim


@pytest.mark.parametrize("entry", STRUCTURES, ids=lambda e: e.key)
def test_conjugation_intertwines(entry):
    c = entry.complex
    for b in c.support():
        p, q = b
        assert c.sigma(p + 1, q) @ c.d1(p, q).conj() == c.d2(q, p) @ c.sigma(p, q)


# -- property tests ----------------------------------------------------------

gaussian = st.builds(Scalar, st.integers(-3, 3), st.integers(-2, 2))


@st.composite
def forms(draw, m=6, degree=None):
    k = draw(st.integers(0, 3)) if degree is None else degree
    monos = list(combinations(range(m), k))
    chosen = draw(st.lists(st.sampled_from(monos), max_size=4)) if monos else []
    return Form({mono: draw(gaussian) for mono in chosen})


@given(st.lists(st.integers(0, 7), max_size=6))
def test_sort_sign_matches_permutation_parity(word):
    s, mono = sort_sign(word)
    assert s == word_sign(tuple(word))
    if s:
        assert mono == tuple(sorted(word))


@given(forms(), forms())
def test_leibniz_rule(a, b):
    d = model("iwasawa").d
    deg = next(iter(a.degrees()), 0)
    lhs = d(a.wedge(b))
    rhs = d(a).wedge(b) + (-1 if deg % 2 else 1) * a.wedge(d(b))
    assert lhs == rhs


@given(st.integers(0, 2**32 - 1))
def test_pairing_well_defined(seed):
    """Adding a del-delbar-exact form to alpha does not change the pairing."""
    rng = random.Random(seed)
    m = model(rng.choice(["iwasawa", "kodaira-primary"]))
    c = m.complex
    k = rng.randint(2, 2 * m.n - 1)
    bds = [b for b in c.bidegrees_of(k) if b.p >= 1 and b.q >= 1]
    if not bds:
        return
    p, q = rng.choice(bds)
    alphas = [a for a in bc_representatives(m, k) if set(m.split(a)) == {(p, q)}]
    betas = bc_representatives(m, 2 * m.n - k)
    if not alphas or not betas:
        return
    alpha, beta = rng.choice(alphas), rng.choice(betas)
    gamma = Form({mono: Scalar(rng.randint(-2, 2), rng.randint(-1, 1)) for mono in m.basis(p - 1, q - 1)})
    exact = m.del_(m.delbar(gamma))
    assert integrate(m, (alpha + exact).wedge(beta)) == integrate(m, alpha.wedge(beta))
