import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottchern.bicomplex import (
    Bidegree,
    CapabilityError,
    DoubleComplex,
    ValidationError,
    aeppli,
    bott_chern,
    check_identities,
    conj_dolbeault,
    de_rham,
    dolbeault,
    natural_map_ranks,
    strip_support,
    total,
    validate,
    varouchas,
)
from bottchern.catalog import lookup
from bottchern.exactnum import ONE
from bottchern.linalg import Matrix
from bottchern.synthetic import (
    direct_sum,
    dot,
    inoue_pattern,
    one_arrow,
    random_basis_change,
    random_complex,
    square,
    zigzag,
)
from oracles import complex_oracle_dims

# Frozen from tests/oracles.py (LieOracle); rows are q = 0..n, columns p = 0..n.
IWASAWA = {
    "dolbeault": [[1, 3, 3, 1], [2, 6, 6, 2], [2, 6, 6, 2], [1, 3, 3, 1]],
    "bott_chern": [[1, 2, 3, 1], [2, 4, 6, 2], [3, 6, 8, 3], [1, 2, 3, 1]],
    "aeppli": [[1, 3, 2, 1], [3, 8, 6, 3], [2, 6, 4, 2], [1, 3, 2, 1]],
}
IWASAWA_BETTI = [1, 4, 8, 10, 8, 4, 1]
KODAIRA = {
    "dolbeault": [[1, 1, 1], [2, 2, 2], [1, 1, 1]],
    "bott_chern": [[1, 1, 1], [1, 3, 2], [1, 2, 1]],
    "aeppli": [[1, 2, 1], [2, 3, 1], [1, 1, 1]],
}
KODAIRA_BETTI = [1, 3, 4, 3, 1]

FUNCS = {"dolbeault": dolbeault, "bott_chern": bott_chern, "aeppli": aeppli}

seeds = st.integers(0, 2**32 - 1)


def conj_random(seed):
    return random_complex(random.Random(seed))


def plain_random(seed):
    """Random complex without conjugation, possibly with negative bidegrees."""
    rng = random.Random(seed)
    parts = []
    for _ in range(rng.randint(1, 4)):
        kind = rng.randrange(3)
        p, q = rng.randint(-1, 2), rng.randint(-1, 2)
        if kind == 0:
            parts.append(dot(p, q))
        elif kind == 1:
            parts.append(square(p, q))
        else:
            first = rng.randint(0, 3)
            parts.append(zigzag(p, q, first, first + rng.randint(0, 3)))
    return random_basis_change(direct_sum(parts), rng)


@pytest.fixture(scope="module")
def iwasawa():
    return lookup("iwasawa").complex


@pytest.fixture(scope="module")
def kodaira():
    return lookup("kodaira-primary").complex


@pytest.mark.parametrize("name", sorted(FUNCS))
def test_iwasawa_tables(iwasawa, name):
    got = [[FUNCS[name](iwasawa, p, q).dim for p in range(4)] for q in range(4)]
    assert got == IWASAWA[name]


@pytest.mark.parametrize("name", sorted(FUNCS))
def test_kodaira_tables(kodaira, name):
    got = [[FUNCS[name](kodaira, p, q).dim for p in range(3)] for q in range(3)]
    assert got == KODAIRA[name]


def test_betti_numbers(iwasawa, kodaira):
    assert [de_rham(iwasawa, k).dim for k in range(7)] == IWASAWA_BETTI
    assert [de_rham(kodaira, k).dim for k in range(5)] == KODAIRA_BETTI


def test_spec_examples(iwasawa, kodaira):
    assert dolbeault(iwasawa, 1, 0).dim == 3
    assert dolbeault(kodaira, 0, 1).dim == 2
    assert conj_dolbeault(iwasawa, 0, 1).dim == 3
    assert de_rham(iwasawa, 1).dim == 4
    assert de_rham(kodaira, 1).dim == 3
    assert bott_chern(iwasawa, 1, 0).dim == 2
    assert bott_chern(kodaira, 1, 0).dim == 1
    assert total(iwasawa, "aeppli", 1) == 6
    assert total(iwasawa, "aeppli", 2) == 12


def test_torus6_dimensions():
    c = lookup("torus6").complex
    for p in range(4):
        for q in range(4):
            expected = comb(3, p) * comb(3, q)
            for f in (dolbeault, conj_dolbeault, bott_chern, aeppli):
                assert f(c, p, q).dim == expected
    assert conj_dolbeault(c, 1, 1).dim == 9
    assert [de_rham(c, k).dim for k in range(7)] == [comb(6, k) for k in range(7)]


def test_validate_examples(iwasawa):
    validate(iwasawa)
    validate(DoubleComplex({}))
    broken = DoubleComplex(
        {(0, 0): 1, (0, 1): 1, (0, 2): 1},
        delbar={(0, 0): Matrix.identity(1), (0, 1): Matrix.identity(1)},
    )
    with pytest.raises(ValidationError) as err:
        validate(broken)
    assert err.value.where == Bidegree(0, 0)
    assert "delbar delbar" in str(err.value)


def test_validate_reports_broken_anticommutation():
    c = DoubleComplex(
        {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1},
        del_={(0, 0): Matrix.identity(1), (0, 1): Matrix.identity(1)},
        delbar={(0, 0): Matrix.identity(1), (1, 0): Matrix.identity(1)},
    )
    bad = [ch for ch in check_identities(c) if not ch.ok]
    assert [(ch.name, ch.where) for ch in bad] == [("del delbar + delbar del = 0", (0, 0))]


def test_shape_mismatch_is_reported():
    c = DoubleComplex({(0, 0): 2, (1, 0): 1}, del_={(0, 0): Matrix.identity(2)})
    with pytest.raises(ValidationError, match="del shape"):
        validate(c)


def test_sigma_requires_conjugation():
    with pytest.raises(CapabilityError):
        square(0, 0).sigma(0, 0)


def test_varouchas_examples(iwasawa):
    assert varouchas(lookup("torus4").complex).is_zero()
    # a single arrow x -> y is a length-two zigzag: Aeppli class at x, Bott-Chern class at y
    c = one_arrow()
    assert [(bott_chern(c, b).dim, aeppli(c, b).dim) for b in c.support()] == [(0, 1), (1, 0)]
    t = varouchas(c)
    assert t.entries == {
        (0, 0): {"a": 0, "b": 0, "c": 1, "d": 0, "e": 0, "f": 0},
        (0, 1): {"a": 0, "b": 0, "c": 0, "d": 1, "e": 0, "f": 0},
    }
    v = varouchas(iwasawa)
    for k in range(7):
        lhs = 2 * v.total("b", k + 1)
        rhs = 2 * v.total("b", k) + v.total("f", k) - v.total("a", k) + (
            total(iwasawa, "aeppli", k) - total(iwasawa, "bott_chern", k)
        )
        assert lhs == rhs


def test_natural_map_examples(iwasawa):
    c = lookup("torus4").complex
    for k in range(5):
        ranks = natural_map_ranks(c, k)
        assert set(ranks.values()) == {de_rham(c, k).dim}
    r = natural_map_ranks(iwasawa, 1)
    assert r["BC->A"] == 4 == total(iwasawa, "bott_chern", 1)
    assert total(iwasawa, "aeppli", 1) == 6
    assert natural_map_ranks(DoubleComplex({}), 0) == dict.fromkeys(r, 0)


def test_strip_examples(iwasawa):
    assert strip_support(iwasawa) == (0, 3)
    assert strip_support(lookup("torus4-symplectic").complex) == (1, 4)
    # ell=2 would allow N=1 without the ell <= N constraint
    spot = DoubleComplex({(5, 2): 1})
    assert strip_support(spot) == (2, 2)
    assert strip_support(DoubleComplex({})) == (0, 0)
    assert strip_support(inoue_pattern()) == (0, 2)


# -- invariants over random complexes ---------------------------------------


def _check_two_path(c):
    for b in c.support():
        assert (bott_chern(c, b).dim, aeppli(c, b).dim) == complex_oracle_dims(c, b)


def _check_varouchas(c):
    v = varouchas(c)
    for b in c.support():
        g = lambda L: v.get(L, b)  # noqa: E731
        h_dol, h_bc, h_a = dolbeault(c, b).dim, bott_chern(c, b).dim, aeppli(c, b).dim
        assert g("a") - g("b") + h_dol - h_a + g("c") == 0
        assert g("d") - h_bc + h_dol - g("e") + g("f") == 0
        assert g("e") == v.get("b", b.p + 1, b.q)
        assert g("c") == v.get("d", b.p, b.q + 1)


def _check_bounds(c):
    for k in c.degree_range():
        b = de_rham(c, k).dim
        assert total(c, dolbeault, k) >= b
        assert total(c, conj_dolbeault, k) >= b
        assert total(c, bott_chern, k) + total(c, aeppli, k) - 2 * b >= 0


@given(seeds)
def test_two_path_formulas_random(seed):
    _check_two_path(conj_random(seed))
    _check_two_path(plain_random(seed))


@given(seeds)
def test_varouchas_exactness_random(seed):
    _check_varouchas(conj_random(seed))
    _check_varouchas(plain_random(seed))


@given(seeds)
def test_frolicher_and_delta_nonnegative(seed):
    _check_bounds(conj_random(seed))
    _check_bounds(plain_random(seed))


@given(seeds)
def test_conjugation_symmetries(seed):
    c = conj_random(seed)
    validate(c)
    v = varouchas(c)
    for b in c.support():
        p, q = b
        assert conj_dolbeault(c, p, q).dim == dolbeault(c, q, p).dim
        assert v.get("d", p, q) == v.get("b", q, p)
        assert v.get("e", p, q) == v.get("c", q, p)
    for k in c.degree_range():
        t = lambda L, j=k: v.total(L, j)  # noqa: E731
        assert t("d") == t("b") and t("e") == t("c") and t("c") == v.total("b", k + 1)
        lhs = total(c, bott_chern, k) - total(c, aeppli, k)
        assert lhs == 2 * t("b") - 2 * v.total("b", k + 1) + t("f") - t("a")


@given(seeds, seeds)
def test_basis_invariance(seed, seed2):
    c = conj_random(seed)
    c2 = random_basis_change(c, random.Random(seed2))
    validate(c2)
    for b in c.support():
        for f in (dolbeault, conj_dolbeault, bott_chern, aeppli):
            assert f(c, b).dim == f(c2, b).dim
    for k in c.degree_range():
        assert de_rham(c, k).dim == de_rham(c2, k).dim
        assert natural_map_ranks(c, k) == natural_map_ranks(c2, k)


def test_building_blocks():
    sq = square(0, 0)
    validate(sq)
    assert all(bott_chern(sq, b).dim == 0 == aeppli(sq, b).dim for b in sq.support())
    z = zigzag(0, 0, 0, 2)  # y0 at (1,0) <- x0 at (0,0) -> y1 at (0,1)
    validate(z)
    assert z.dims == {Bidegree(1, 0): 1, Bidegree(0, 0): 1, Bidegree(0, 1): 1}
    assert bott_chern(z, 0, 0).dim == 0 and aeppli(z, 0, 0).dim == 1
    assert [de_rham(z, k).dim for k in (0, 1)] == [0, 1]
    assert dot(2, 3).dim(2, 3) == 1
    assert z.d1(0, 0) == Matrix.identity(1) and z.d2(0, 0).entries == (ONE,)
