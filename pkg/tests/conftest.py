import cmath

import numpy as np
import pytest
from hypothesis import strategies as st

from hardytree import FiniteSupport, TreeGeometry, VertexId


def random_finite(rng: np.random.Generator, q: int, depth: int, size: int = 6) -> FiniteSupport:
    geo = TreeGeometry(q)
    entries = {}
    for _ in range(size):
        n = int(rng.integers(0, depth + 1))
        v = VertexId(n, int(rng.integers(0, geo.level_size(n))))
        entries[v] = complex(rng.normal(), rng.normal())
    return FiniteSupport(q, entries)


@st.composite
def finite_functions(draw, qs=(1, 2, 3), max_depth=6, max_size=8):
    q = draw(st.sampled_from(qs))
    geo = TreeGeometry(q)
    size = draw(st.integers(0, max_size))
    entries = {}
    for _ in range(size):
        n = draw(st.integers(0, max_depth))
        i = draw(st.integers(0, geo.level_size(n) - 1))
        r = draw(st.floats(0, 1e3, allow_nan=False))
        theta = draw(st.floats(0, 2 * cmath.pi))
        entries[VertexId(n, i)] = cmath.rect(r, theta)
    return FiniteSupport(q, entries)


exponents = st.sampled_from([0.5, 1.0, 1.5, 2.0, 3.0, float("inf")])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
