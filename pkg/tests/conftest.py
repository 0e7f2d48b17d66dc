import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bottchern.exactnum import Scalar
from bottchern.linalg import Matrix

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def scalars(draw, nonzero=False, real=False):
    re = draw(small_fractions)
    im = Fraction(0) if real else draw(small_fractions)
    s = Scalar(re, im)
    if nonzero and not s:
        s = Scalar(1, im)
    return s


@st.composite
def sparse_scalars(draw):
    """Mostly zero, otherwise small Gaussian integers; keeps ranks interesting."""
    if draw(st.integers(0, 2)) == 0:
        return Scalar(0)
    return Scalar(draw(st.integers(-2, 2)), draw(st.integers(-1, 1)))


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=5):
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    entries = draw(st.lists(sparse_scalars(), min_size=r * c, max_size=r * c))
    return Matrix(r, c, tuple(entries))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA
