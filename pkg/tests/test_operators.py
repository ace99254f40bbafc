import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import finite_functions, random_finite
from hardytree import (
    Answer,
    FiniteSupport,
    NotInvertible,
    PathSupported,
    PointwiseRule,
    Radial,
    SpectrumUndecided,
    Symbol,
    Tail,
    TreeGeometry,
    VertexId,
    analyze,
    compactness_verdict,
    delta_lower_bound,
    essential_norm_upper,
    isometry_verdict,
    level_mean,
    norm,
    operator_norm,
    point_mass,
    point_spectrum_sample,
    resolvent_symbol,
    spectrum_classify,
)
from hardytree.operators import (
    SpectralKind,
    apply,
    boundedness,
    normalized_point_mass,
    pointwise_null_sequence_check,
    shifted,
)
from hardytree.tree import leftmost_path_vertex

V0 = VertexId(2, 5)


def vanishing():
    return Symbol(Radial.from_rule(2, lambda n: 1 / (n + 1), Tail.vanishing(bound=1.0, sharp=True)))


def test_apply_identity_and_point_mass():
    f = FiniteSupport(2, {(1, 1): 2 - 1j, (3, 4): 5})
    one = Symbol(Radial.constant(2, 1))
    image = apply(one, f)
    geo = TreeGeometry(2)
    assert all(image(v) == f(v) for n in range(5) for v in geo.enumerate_level(n))


@pytest.mark.parametrize("q", [1, 2, 3])
def test_eigen_identity(q):
    geo = TreeGeometry(q)
    psi = Symbol(Radial.from_values(q, [2, -1j, 0.5, 3], "last"))
    for n in range(7):
        for v in geo.enumerate_level(n):
            image = apply(psi, point_mass(q, v))
            assert isinstance(image, FiniteSupport)
            assert image.entries == {v: psi(v)}


@settings(max_examples=50, deadline=None)
@given(finite_functions(qs=(2,)), finite_functions(qs=(2,)), st.sampled_from([0.5, 1.0, 2.0, math.inf]))
def test_submultiplicative_means(psi_rep, f, p):
    psi = Symbol(psi_rep)
    bound = operator_norm(psi, p, 6).value
    image = apply(psi, f)
    for n in range(7):
        assert level_mean(image, n, p) <= bound * level_mean(f, n, p) * (1 + 1e-12) + 1e-300


def test_operator_norm_examples():
    r = operator_norm(Symbol(point_mass(2, V0, 5)), 2, 4)
    assert r.value == 5.0 and r.exact
    r = operator_norm(Symbol(Radial.from_rule(2, lambda n: 1 - 1 / (n + 1), Tail.bounded(bound=1.0, sharp=True))), 2, 10)
    assert r.value == 1.0 and r.exact
    unbounded = Symbol(Radial.from_values(2, [0, 1], "linear"))
    assert boundedness(unbounded, 10).answer is Answer.NO
    assert boundedness(Symbol(PointwiseRule(2, lambda v: 1)), 3).answer is Answer.INCONCLUSIVE


def test_delta_lower_bound_examples(rng):
    assert delta_lower_bound(Symbol(point_mass(3, V0, 3)), 2, [V0]) == pytest.approx(3.0, rel=1e-14)
    psi = Symbol(random_finite(rng, 3, 4))
    assert delta_lower_bound(psi, 1, list(psi.psi.entries)) == pytest.approx(operator_norm(psi, 1, 4).value, rel=1e-12)
    unbounded = Symbol(Radial.from_values(2, [0, 1], "linear"))
    lows = [delta_lower_bound(unbounded, 2, [leftmost_path_vertex(k)]) for k in range(1, 15)]
    assert lows == pytest.approx(list(range(1, 15)), rel=1e-12)


def test_normalized_point_mass_has_unit_norm():
    for p in (0.5, 2, math.inf):
        assert norm(normalized_point_mass(3, (4, 7), p), p, 5).value == pytest.approx(1.0, rel=1e-14)


def test_point_spectrum_examples():
    sample = point_spectrum_sample(Symbol(point_mass(3, V0)), 4)
    assert sorted(z.real for z in sample.values) == [0.0, 1.0] and sample.complete
    by_value = dict(zip(sample.values, sample.witnesses))
    assert by_value[1] == V0 and by_value[0] != V0
    sample = point_spectrum_sample(vanishing(), 4)
    assert sample.values == [1, 1 / 2, 1 / 3, 1 / 4, 1 / 5]
    assert sample.limit_points == [0] and not sample.complete


def test_zero_in_sample_iff_not_injective():
    # finite support always leaves zeros
    assert 0 in point_spectrum_sample(Symbol(point_mass(2, (1, 0))), 3).values
    assert 0 not in point_spectrum_sample(Symbol(Radial.from_values(2, [1, 2], "last")), 5).values
    assert 0 in point_spectrum_sample(Symbol(Radial.from_values(2, [1, 0, 2], "last")), 5).values


def test_spectrum_classify_examples():
    psi = Symbol(point_mass(3, V0))
    cls = spectrum_classify(psi, 0.5, 4)
    assert cls.kind is SpectralKind.RESOLVENT
    assert cls.distance == pytest.approx(0.5) and cls.inverse_norm == pytest.approx(2.0)
    cls = spectrum_classify(psi, 1, 4)
    assert cls.kind is SpectralKind.POINT_SPECTRUM and cls.witness == V0
    assert spectrum_classify(vanishing(), 0, 10).kind is SpectralKind.IN_CLOSURE
    assert spectrum_classify(Symbol(PointwiseRule(2, lambda v: 1)), 5, 3).kind is SpectralKind.INCONCLUSIVE


def test_resolvent_examples():
    psi = Symbol(point_mass(3, V0))
    res = resolvent_symbol(psi, 3)
    assert res(V0) == pytest.approx(-0.5) and res((2, 0)) == pytest.approx(-1 / 3)
    assert operator_norm(res, 2, 3).value == pytest.approx(0.5, rel=1e-12)
    with pytest.raises(NotInvertible):
        resolvent_symbol(vanishing(), 0)
    with pytest.raises(NotInvertible):
        resolvent_symbol(psi, 1)
    with pytest.raises(SpectrumUndecided):
        resolvent_symbol(Symbol(PointwiseRule(2, lambda v: 1)), 5)


def test_resolvent_inversion(rng):
    geo = TreeGeometry(2)
    for _ in range(20):
        values = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi = Symbol(Radial.from_values(2, values, "last"))
        lam = complex(rng.normal() * 3, rng.normal() * 3)
        d = min(abs(values - lam))
        if d < 1e-3:
            continue
        res = resolvent_symbol(psi, lam)
        assert operator_norm(res, 2, 6).value == pytest.approx(1 / d, rel=1e-10)
        shift = shifted(psi, lam)
        f = random_finite(rng, 2, 5)
        back = apply(res, apply(shift, f))
        for n in range(7):
            for v in geo.enumerate_level(n):
                assert abs(back(v) - f(v)) <= 1e-12 * max(1.0, abs(f(v)))


def test_compactness_examples():
    psi = Symbol(FiniteSupport(2, {(1, 1): 2, (3, 0): -1j}))
    assert compactness_verdict(psi, 5).answer is Answer.YES
    image = apply(psi, Radial.constant(2, 1))
    assert all(level_mean(image, n, math.inf) == 0 for n in range(4, 9))
    assert compactness_verdict(vanishing(), 5).answer is Answer.YES
    assert compactness_verdict(Symbol(Radial.constant(2, 1)), 5).answer is Answer.NO
    assert compactness_verdict(Symbol(PointwiseRule(2, lambda v: 1)), 3).answer is Answer.INCONCLUSIVE


def test_essential_norm_examples():
    psi = Symbol(FiniteSupport(2, {(1, 1): 2, (3, 0): -1j}))
    b = essential_norm_upper(psi, 6)
    assert b.bound == 0.0 and b.sequence[4:] == [0.0, 0.0, 0.0]
    c = 0.6 - 0.8j
    b = essential_norm_upper(Symbol(Radial.constant(2, c)), 8)
    assert b.bound == pytest.approx(1.0) and all(x == pytest.approx(abs(c)) for x in b.sequence)
    b = essential_norm_upper(Symbol(Radial.constant(2, 1)), 8)
    assert b.sequence == [1.0] * 9 and b.bound == 1.0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=1, max_size=10), st.sampled_from(["zero", "last"]))
def test_essential_sequence_nonincreasing(values, extend):
    b = essential_norm_upper(Symbol(Radial.from_values(2, values, extend)), 12)
    assert all(x >= y for x, y in zip(b.sequence, b.sequence[1:]))


def test_isometry_examples():
    unimodular = Symbol(Radial.from_rule(2, lambda n: cmath.exp(1j * n), Tail.unimodular()))
    assert isometry_verdict(unimodular, 6).answer is Answer.YES
    v = isometry_verdict(Symbol(point_mass(3, V0)), 4)
    assert v.answer is Answer.NO and v.witness != V0
    bumped = Symbol(FiniteSupport(2, {V0: 1.5}))
    v = isometry_verdict(Symbol(Radial.from_values(2, [1, 1, 1.5], "last")), 5)
    assert v.answer is Answer.NO and v.witness.level == 2
    # the normalized point mass at the witness exposes the defect
    assert delta_lower_bound(bumped, 2, [V0]) == pytest.approx(1.5, rel=1e-14)
    assert isometry_verdict(Symbol(PointwiseRule(2, lambda v: 1)), 3).answer is Answer.INCONCLUSIVE


@settings(max_examples=30, deadline=None)
@given(finite_functions(qs=(2,)), st.floats(-10, 10))
def test_unimodular_preserves_means(f, theta):
    psi = Symbol(Radial.from_rule(2, lambda n: cmath.exp(1j * theta * n), Tail.unimodular()))
    image = apply(psi, f)
    for p in (0.5, 1.0, 2.0, math.inf):
        for n in range(7):
            assert level_mean(image, n, p) == pytest.approx(level_mean(f, n, p), rel=1e-12, abs=1e-300)


def test_null_sequence_examples():
    fs = [normalized_point_mass(2, leftmost_path_vertex(k), 2) for k in range(1, 9)]
    seq = pointwise_null_sequence_check(vanishing(), fs, 2, 10)
    assert seq == pytest.approx([1 / (k + 1) for k in range(1, 9)], rel=1e-12)
    seq = pointwise_null_sequence_check(Symbol(Radial.constant(2, 1)), fs, 2, 10)
    assert seq == pytest.approx([1.0] * 8, rel=1e-12)
    seq = pointwise_null_sequence_check(Symbol(point_mass(2, (2, 0))), fs, 2, 10)
    assert seq[2:] == [0.0] * 6


def test_analyze_report():
    report = analyze(Symbol(point_mass(3, V0)), 2, 4).to_dict()
    assert report["operator_norm"] == {"value": 1.0, "exact": True}
    assert report["compact"] == "yes" and report["isometry"] == "no" and report["bounded"] == "yes"
    assert sorted(map(tuple, report["spectrum"]["values"])) == [(0.0, 0.0), (1.0, 0.0)]
    assert set(report["basis"]) >= {"operator_norm", "spectrum", "compact", "isometry"}
    assert analyze(Symbol(Radial.from_values(2, [0, 1], "linear")), 2, 5).to_dict()["bounded"] == "no"


def test_path_symbol_growth():
    # coefficient grows along the path: M_psi is unbounded
    psi = Symbol(PathSupported.from_values(2, [0, 1], "last", growth=0.5))
    assert boundedness(psi, 6).answer is Answer.NO
    psi = Symbol(PathSupported.from_values(2, [1], "last"))
    assert boundedness(psi, 6).answer is Answer.YES
    assert compactness_verdict(psi, 6).answer is Answer.NO
    assert essential_norm_upper(psi, 6).bound == 1.0


def test_random_finite_operator_norm_equals_delta(rng):
    for _ in range(30):
        q = int(rng.integers(1, 4))
        psi = Symbol(random_finite(rng, q, 5))
        norm_value = operator_norm(psi, 2, 5).value
        assert delta_lower_bound(psi, 2, list(psi.psi.entries)) == pytest.approx(norm_value, rel=1e-12, abs=1e-300)
        assert norm_value == pytest.approx(max([abs(x) for x in psi.psi.entries.values()] + [0.0]), rel=1e-15)
