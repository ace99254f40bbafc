import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import finite_functions
from hardytree import (
    DenseTruncated,
    DocumentError,
    NotSerializable,
    PathSupported,
    PointwiseRule,
    Radial,
    TreeGeometry,
)
from hardytree.serialize import dumps, function_from_document, function_to_document, loads_function


def _agree(f, g, depth=6):
    geo = TreeGeometry(f.q)
    return all(f(v) == g(v) for n in range(depth + 1) for v in geo.enumerate_level(n))


def _roundtrip(f):
    text = dumps(function_to_document(f))
    return loads_function(text)


@settings(max_examples=40, deadline=None)
@given(finite_functions(max_depth=5))
def test_roundtrip_finite(f):
    assert _agree(f, _roundtrip(f), 5)


@given(
    st.sampled_from([1, 2, 3]),
    st.lists(st.complex_numbers(max_magnitude=1e6, allow_nan=False), max_size=6),
    st.sampled_from(["zero", "last", "linear"]),
)
def test_roundtrip_radial(q, values, extend):
    f = Radial.from_values(q, values, extend)
    assert _agree(f, _roundtrip(f), 5)


def test_roundtrip_path_and_dense():
    f = PathSupported.from_values(2, [0, 1, 2j], "last", growth=0.5)
    g = _roundtrip(f)
    assert _agree(f, g) and g.growth == 0.5
    rng = np.random.default_rng(0)
    d = DenseTruncated(3, [rng.normal(size=TreeGeometry(3).level_size(n)) for n in range(4)])
    assert _agree(d, _roundtrip(d), 5)


def test_rule_based_not_serializable():
    with pytest.raises(NotSerializable):
        function_to_document(PointwiseRule(2, lambda v: 1))
    with pytest.raises(NotSerializable):
        function_to_document(Radial.from_rule(2, lambda n: n))


@pytest.mark.parametrize(
    "doc",
    [
        {"kind": "nope", "q": 2},
        {"kind": "finite", "q": 0, "entries": []},
        {"kind": "finite", "q": 2, "entries": [[1, 9, 1.0, 0.0]]},
        {"kind": "radial", "q": 2, "values": ["x"]},
        {"kind": "radial", "q": 2, "values": [1, 2], "extend": "linear", "tail": "vanishing"},
        {"kind": "radial", "q": 2, "values": [1, 5], "extend": "last", "bound": 2},
        {"kind": "dense", "q": 2, "levels": [[1], [1, 2]]},
        [1, 2, 3],
    ],
)
def test_bad_documents(doc):
    with pytest.raises(DocumentError):
        function_from_document(doc)


def test_q_mismatch():
    with pytest.raises(DocumentError):
        function_from_document({"kind": "radial", "q": 2, "values": [1]}, q=3)


def test_dumps_is_canonical():
    obj = {"b": [1.0, 0.1, math.inf, -math.inf, math.nan], "a": {"z": True, "y": None}, "c": np.float64(2.5)}
    text = dumps(obj)
    assert text == dumps(json.loads(json.dumps(obj, default=float)))
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert '0.10000000000000001' in text and '"inf"' in text and '"-inf"' in text and '"nan"' in text
    assert json.loads(text)["c"] == 2.5
