import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardytree import LevelTooLarge, RootHasNoParent, TreeGeometry, VertexId, enumeration_limit
from hardytree.tree import ROOT, leftmost_path_vertex


@pytest.mark.parametrize("q,n,size", [(3, 0, 1), (3, 2, 12), (1, 5, 2), (2, 3, 12)])
def test_level_size(q, n, size):
    assert TreeGeometry(q).level_size(n) == size


def test_level_size_is_exact_beyond_64_bits():
    assert TreeGeometry(3).level_size(60) == 4 * 3**59


@pytest.mark.parametrize("q", [0, -1, 1.5, True])
def test_invalid_q(q):
    with pytest.raises((ValueError, TypeError)):
        TreeGeometry(q)


def test_log_level_size_examples():
    geo = TreeGeometry(3)
    assert geo.log_level_size(0) == 0.0
    assert geo.log_level_size(2) == pytest.approx(math.log(12), rel=1e-15)
    # oracle: natural log of the exact integer
    exact = math.log(TreeGeometry(2).level_size(40))
    assert TreeGeometry(2).log_level_size(40) == pytest.approx(exact, rel=1e-14)


@given(st.sampled_from([1, 2, 3, 5]), st.integers(0, 32))
def test_log_level_size_matches_exact(q, n):
    geo = TreeGeometry(q)
    size = geo.level_size(n)
    if size < 2**53:
        assert math.exp(geo.log_level_size(n)) == pytest.approx(size, rel=1e-12)


@given(st.sampled_from([1, 2, 3, 5]), st.integers(1, 40))
def test_level_size_recurrence(q, n):
    geo = TreeGeometry(q)
    factor = q + 1 if n == 1 else q
    assert geo.level_size(n) == factor * geo.level_size(n - 1)


def test_parent_examples():
    geo = TreeGeometry(3)
    assert geo.parent((1, 3)) == ROOT
    assert geo.parent((2, 7)) == (1, 2)
    with pytest.raises(RootHasNoParent):
        geo.parent((0, 0))


def test_children_examples():
    assert TreeGeometry(3).children((0, 0)) == [(1, 0), (1, 1), (1, 2), (1, 3)]
    assert TreeGeometry(3).children((1, 2)) == [(2, 6), (2, 7), (2, 8)]
    assert TreeGeometry(1).children((4, 1)) == [(5, 1)]


@pytest.mark.parametrize("q", [1, 2, 3, 5])
def test_parent_children_roundtrip_and_counts(q):
    geo = TreeGeometry(q)
    for n in range(12 if q < 5 else 7):
        seen = []
        for v in geo.enumerate_level(n):
            kids = geo.children(v)
            assert all(geo.parent(c) == v for c in kids)
            seen.extend(kids)
        # the children of level n partition level n + 1, in order
        assert seen == list(geo.enumerate_level(n + 1))


def test_enumerate_level():
    assert len(list(TreeGeometry(3).enumerate_level(1))) == 4
    assert len(list(TreeGeometry(2).enumerate_level(3))) == 12
    with pytest.raises(LevelTooLarge):
        TreeGeometry(3).enumerate_level(50)


def test_enumeration_cap_context():
    geo = TreeGeometry(2)
    with enumeration_limit(10):
        with pytest.raises(LevelTooLarge):
            geo.enumerate_level(3)
    assert len(list(geo.enumerate_level(3))) == 12


def test_invalid_vertices():
    geo = TreeGeometry(2)
    assert not geo.contains((0, 1))
    assert not geo.contains((2, 6))
    assert geo.contains((2, 5))
    with pytest.raises(ValueError):
        geo.vertex(0, 1)


def test_leftmost_path():
    geo = TreeGeometry(2)
    assert leftmost_path_vertex(0) == (0, 0)
    assert leftmost_path_vertex(5) == (5, 0)
    assert geo.parent(leftmost_path_vertex(7)) == leftmost_path_vertex(6)
    assert isinstance(leftmost_path_vertex(3), VertexId)
