"""Named example functions and symbols, with self-checking runs.

Each registered scenario builds its functions, evaluates a list of checks and
reports every check with a provenance tag: ``PAPER`` for values stated by the
theory, ``DERIVED`` for values computed by an independent route and
``TRIVIAL`` for values forced by the construction.

``dense_oracle_mean`` is the brute-force reference used to validate every
closed-form level mean: it enumerates the level and sums in the linear domain
with exactly rounded summation.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import NotInvertible
from .functions import (
    INF,
    FiniteSupport,
    FunctionRep,
    PathSupported,
    Radial,
    Tail,
    as_exponent,
    linear_combination,
    point_mass,
)
from .operators import (
    Answer,
    SpectralKind,
    Symbol,
    analyze,
    apply,
    compactness_verdict,
    delta_lower_bound,
    essential_norm_upper,
    isometry_verdict,
    normalized_point_mass,
    operator_norm,
    point_spectrum_sample,
    pointwise_null_sequence_check,
    resolvent_symbol,
    spectrum_classify,
)
from .space import (
    Membership,
    compact_sup_diff,
    growth_bound,
    level_mean,
    lipschitz_seminorm,
    membership,
    norm,
    truncate,
    weighted_lipschitz_seminorm,
)
from .tree import TreeGeometry, VertexId, leftmost_path_vertex

CHECK_TOL = 1e-10


# -- constructors --------------------------------------------------------------


def sharp_growth(q: int, p, v) -> FiniteSupport:
    """Point mass at ``v`` with value ``level_size(|v|)**(1/p)``; its p-norm is 1."""
    p = as_exponent(p)
    if math.isinf(p):
        raise ValueError("sharp growth example needs a finite exponent")
    v = VertexId(*v)
    return point_mass(q, v, math.exp(TreeGeometry(q).log_level_size(v.level) / p))


def proper_inclusion(q: int, p) -> PathSupported:
    """``level_size(n)**(1/p)`` at ``(n, 0)`` for ``n >= 1``, zero elsewhere.

    It lies in T_{r,0} for every ``r < p`` and outside T_s for every ``s > p``.
    """
    p = as_exponent(p)
    if math.isinf(p):
        raise ValueError("proper inclusion example needs a finite exponent")
    return PathSupported.from_values(q, [0, 1], "last", growth=1.0 / p)


@lru_cache(maxsize=None)
def _harmonic(n: int) -> float:
    return math.fsum(1.0 / k for k in range(1, n + 1))


def harmonic_radial(q: int) -> Radial:
    """``h(v) = sum_{k=1}^{|v|} 1/k``."""
    return Radial.from_rule(q, _harmonic, Tail.divergent())


def lipschitz_examples(q: int, p) -> dict[str, FunctionRep]:
    """Functions separating T_p from the Lipschitz and weighted Lipschitz spaces.

    ``f_abs`` is Lipschitz but not in T_p, ``g_path`` is in T_p but not
    Lipschitz, ``h_harmonic`` is weighted Lipschitz but not in T_p, and
    ``chi_path`` is in T_p but not weighted Lipschitz.
    """
    return {
        "f_abs": Radial.from_values(q, [0, 1], "linear"),
        "g_path": proper_inclusion(q, p),
        "h_harmonic": harmonic_radial(q),
        "chi_path": PathSupported.from_values(q, [1], "last"),
    }


def truncation_sequence(f: FunctionRep, ns) -> list[FunctionRep]:
    return [truncate(f, n) for n in ns]


def separated_family_sample(count: int, seed: int, depth: int, p=2.0) -> list[Radial]:
    """Distinct radial functions with values in {0, 1}, pairwise at distance 1."""
    if count < 2:
        raise ValueError("count must be at least 2")
    as_exponent(p)
    if count > 2 ** (depth + 1):
        raise ValueError(f"only {2 ** (depth + 1)} distinct patterns exist on levels <= {depth}")
    rng = np.random.default_rng(seed)
    patterns: list[tuple[int, ...]] = []
    seen = set()
    while len(patterns) < count:
        bits = tuple(int(b) for b in rng.integers(0, 2, size=depth + 1))
        if bits not in seen:
            seen.add(bits)
            patterns.append(bits)
    return [Radial.from_values(2, bits, "zero") for bits in patterns]


def dense_oracle_mean(f: FunctionRep, n: int, p, geo: TreeGeometry | None = None) -> float:
    """Brute-force ``M_p(n, f)``: enumerate level ``n`` and sum with ``math.fsum``."""
    geo = geo or f.geometry
    p = as_exponent(p)
    moduli = [abs(f.evaluate(v)) for v in geo.enumerate_level(n)]
    top = max(moduli)
    if top == 0:
        return 0.0
    if math.isinf(p):
        return top
    total = math.fsum((x / top) ** p for x in moduli)
    return top * (total / geo.level_size(n)) ** (1.0 / p)


# -- scenario machinery --------------------------------------------------------


@dataclass
class Check:
    name: str
    tag: str
    passed: bool
    residual: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "tag": self.tag,
            "passed": self.passed,
            "residual": self.residual,
            "detail": self.detail,
        }


def _rel(got: float, want: float) -> float:
    if got == want:
        return 0.0
    return abs(got - want) / max(abs(want), 1e-300)


def close(name: str, tag: str, got: float, want: float, tol: float = CHECK_TOL) -> Check:
    r = _rel(got, want)
    return Check(name, tag, r <= tol, r, f"got {got!r}, expected {want!r}")


def holds(name: str, tag: str, condition: bool, detail: str = "") -> Check:
    return Check(name, tag, bool(condition), 0.0 if condition else 1.0, detail)


@dataclass
class Scenario:
    name: str
    description: str
    params: dict
    run: Callable[[dict], list[Check]]


@dataclass
class ScenarioResult:
    name: str
    description: str
    params: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def theory_passed(self) -> bool:
        return all(c.passed for c in self.checks if c.tag == "PAPER")

    def to_dict(self) -> dict:
        return {
            "scenario": self.name,
            "description": self.description,
            "params": self.params,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
            "theory_passed": self.theory_passed,
            "counts": {
                "total": len(self.checks),
                "failed": sum(not c.passed for c in self.checks),
            },
        }


REGISTRY: dict[str, Scenario] = {}


def scenario(name: str, description: str, **params):
    def register(fn):
        REGISTRY[name] = Scenario(name, description, params, fn)
        return fn

    return register


def run_scenario(name: str) -> ScenarioResult:
    sc = REGISTRY[name]
    return ScenarioResult(sc.name, sc.description, dict(sc.params), sc.run(dict(sc.params)))


# -- registered scenarios ------------------------------------------------------


@scenario(
    "sharp-growth",
    "point mass of height level_size(m)**(1/p) has norm 1 and attains the growth bound",
    qs=[1, 2, 3],
    ps=[0.5, 1.0, 2.0, 4.0],
    levels=[1, 7, 30],
)
def _sharp_growth(params):
    checks = []
    for q, p, m in itertools.product(params["qs"], params["ps"], params["levels"]):
        v = VertexId(m, TreeGeometry(q).level_size(m) - 1)
        f = sharp_growth(q, p, v)
        report = norm(f, p, m + 2)
        tag = f"q={q} p={p} |v|={m}"
        checks.append(close(f"norm is 1 ({tag})", "PAPER", report.value, 1.0))
        checks.append(holds(f"norm is exact ({tag})", "TRIVIAL", report.exact))
        checks.append(close(f"growth ratio is 1 ({tag})", "PAPER", growth_bound(f, v, p, m).ratio, 1.0))
        off = max(level_mean(f, n, p) for n in range(m + 3) if n != m)
        checks.append(holds(f"means vanish off level {m} ({tag})", "TRIVIAL", off == 0.0))
    f = sharp_growth(2, 2.0, (3, 4))
    root = growth_bound(f, (0, 0), 2.0, 5)
    checks.append(close("at the root the bound is the norm", "PAPER", root.bound, norm(f, 2.0, 5).value))
    return checks


@scenario(
    "proper-inclusion",
    "path function in T_{r,0} for r < p but outside T_s for s > p",
    q=2,
    p=2.0,
    rs=[0.5, 1.0],
    ss=[4.0, "inf"],
    levels=40,
)
def _proper_inclusion(params):
    q, p = params["q"], params["p"]
    f = proper_inclusion(q, p)
    geo = TreeGeometry(q)
    checks = [close("M_1(3, f) = 12**(-1/2)", "PAPER", level_mean(f, 3, 1.0), 12 ** -0.5)]
    checks.append(close("oracle M_1(3, f) over 12 vertices", "DERIVED", level_mean(f, 3, 1.0), dense_oracle_mean(f, 3, 1.0)))
    for r in params["rs"]:
        worst = max(
            _rel(level_mean(f, n, r), float(geo.level_size(n)) ** (1 / p - 1 / r))
            for n in range(1, params["levels"] + 1)
        )
        checks.append(Check(f"M_{r}(n, f) = level_size(n)**(1/p - 1/r), n <= 40", "PAPER", worst <= CHECK_TOL, worst))
        verdict = membership(f, r, "Tp0", 10).verdict
        checks.append(holds(f"f in T_({r},0)", "PAPER", verdict is Membership.IN_SPACE, verdict.value))
    for s in params["ss"]:
        s = as_exponent(s)
        verdict = membership(f, s, "Tp", 10).verdict
        checks.append(holds(f"f not in T_{s}", "PAPER", verdict is Membership.NOT_IN_SPACE, verdict.value))
    worst = max(_rel(level_mean(f, n, INF), float(geo.level_size(n)) ** (1 / p)) for n in range(1, 41))
    checks.append(Check("M_inf(n, f) = level_size(n)**(1/p)", "PAPER", worst <= CHECK_TOL, worst))
    return checks


@scenario(
    "lipschitz-comparison",
    "T_p is not comparable with the Lipschitz and weighted Lipschitz spaces",
    q=2,
    p=2.0,
    depth=30,
)
def _lipschitz(params):
    q, p, depth = params["q"], params["p"], params["depth"]
    ex = lipschitz_examples(q, p)
    geo = TreeGeometry(q)
    checks = [
        close("f(v) = |v| has Lipschitz seminorm 1", "PAPER", lipschitz_seminorm(ex["f_abs"], depth), 1.0),
        holds(
            "f(v) = |v| is not in T_p",
            "PAPER",
            membership(ex["f_abs"], p, "Tp", depth).verdict is Membership.NOT_IN_SPACE,
        ),
        holds(
            "g_path is in T_p",
            "PAPER",
            membership(ex["g_path"], p, "Tp", depth).verdict is Membership.IN_SPACE,
        ),
    ]
    jump = float(geo.level_size(depth)) ** (1 / p) - float(geo.level_size(depth - 1)) ** (1 / p)
    g_semi = lipschitz_seminorm(ex["g_path"], depth)
    checks.append(
        holds(
            "g_path Lipschitz differences grow with depth",
            "PAPER",
            g_semi >= jump * (1 - CHECK_TOL) and g_semi > lipschitz_seminorm(ex["g_path"], depth // 2),
            f"seminorm {g_semi} at depth {depth}",
        )
    )
    checks.append(close("h has weighted Lipschitz seminorm 1", "DERIVED", weighted_lipschitz_seminorm(ex["h_harmonic"], depth), 1.0))
    checks.append(
        holds(
            "h is not in T_p",
            "PAPER",
            membership(ex["h_harmonic"], p, "Tp", depth).verdict is Membership.NOT_IN_SPACE,
        )
    )
    checks.append(
        holds(
            "chi_path is in T_p",
            "PAPER",
            membership(ex["chi_path"], p, "Tp", depth).verdict is Membership.IN_SPACE,
        )
    )
    worst = max(
        _rel(level_mean(ex["chi_path"], n, p), float(geo.level_size(n)) ** (-1 / p)) for n in range(depth + 1)
    )
    checks.append(Check("M_p(n, chi_path) = level_size(n)**(-1/p)", "DERIVED", worst <= CHECK_TOL, worst))
    checks.append(
        close(
            "chi_path weighted seminorm equals the depth",
            "DERIVED",
            weighted_lipschitz_seminorm(ex["chi_path"], depth),
            float(depth),
        )
    )
    return checks


@scenario(
    "uniform-vs-norm",
    "truncations of f = 1 converge uniformly on finite sets but stay at norm distance 1",
    q=2,
    ps=[0.5, 1.0, 2.0, "inf"],
    n_max=200,
)
def _uniform_vs_norm(params):
    q = params["q"]
    f = Radial.constant(q, 1)
    worst_gap, worst_sup, exact = 0.0, 0.0, True
    for n in range(params["n_max"] + 1):
        fn = truncate(f, n)
        gap = linear_combination(1, f, -1, fn)
        for p in params["ps"]:
            report = norm(gap, p, 3)
            worst_gap = max(worst_gap, _rel(report.value, 1.0))
            exact = exact and report.exact
        if n >= 1:
            worst_sup = max(worst_sup, compact_sup_diff(f, fn, n - 1))
    return [
        Check("||f - f_n||_p = 1 for every n <= 200", "PAPER", worst_gap == 0.0, worst_gap),
        holds("norm gaps are exact", "TRIVIAL", exact),
        Check("sup_{|v| <= N} |f - f_n| = 0 for n > N", "PAPER", worst_sup == 0.0, worst_sup),
    ]


@scenario(
    "non-completeness",
    "truncations of f(v) = |v| are Cauchy on finite sets, each lies in T_p, the limit does not",
    q=3,
    p=2.0,
    triples=[[2, 3, 5], [4, 6, 9], [10, 20, 40]],
)
def _non_completeness(params):
    q, p = params["q"], params["p"]
    f = Radial.from_values(q, [0, 1], "linear")
    checks = []
    for N, n, m in params["triples"]:
        fn, fm = truncation_sequence(f, [n, m])
        checks.append(
            close(f"f_{n} = f_{m} on |v| <= {N}", "PAPER", compact_sup_diff(fn, fm, N), 0.0)
        )
        checks.append(
            holds(f"f_{n} in T_p", "PAPER", membership(fn, p, "Tp", m).verdict is Membership.IN_SPACE)
        )
    checks.append(
        holds("pointwise limit |v| not in T_p", "PAPER", membership(f, p, "Tp", 10).verdict is Membership.NOT_IN_SPACE)
    )
    return checks


@scenario(
    "separated-family",
    "distinct radial {0,1}-valued functions are at mutual distance 1",
    count=16,
    seed=0,
    depth=10,
    p=2.0,
)
def _separated(params):
    fs = separated_family_sample(params["count"], params["seed"], params["depth"], params["p"])
    dists = [
        norm(linear_combination(1, f, -1, g), params["p"], params["depth"]).value
        for f, g in itertools.combinations(fs, 2)
    ]
    worst = max(abs(d - 1) for d in dists)
    ok = sum(d == 1.0 for d in dists)
    self_dist = norm(linear_combination(1, fs[0], -1, fs[0]), params["p"], params["depth"]).value
    return [
        Check(f"{ok}/{len(dists)} pairs at distance exactly 1", "DERIVED", worst == 0.0 and len(dists) == 120, worst),
        close("distance of a function to itself is 0", "TRIVIAL", self_dist, 0.0),
    ]


@scenario(
    "point-mass-symbol",
    "multiplication by chi_{v0}: norm 1, compact, not an isometry, spectrum {0, 1}",
    q=3,
    v0=[2, 5],
    p=2.0,
    depth=4,
)
def _point_mass_symbol(params):
    q, p, depth = params["q"], params["p"], params["depth"]
    v0 = VertexId(*params["v0"])
    psi = Symbol(point_mass(q, v0))
    report = analyze(psi, p, depth)
    spectrum = sorted((z.real, z.imag) for z in report.spectrum.values)
    checks = [
        close("operator norm is 1", "DERIVED", report.operator_norm.value, 1.0),
        holds("operator norm is exact", "TRIVIAL", report.operator_norm.exact),
        close("normalized point mass attains the norm", "PAPER", delta_lower_bound(psi, p, [v0]), 1.0),
        holds("compact", "PAPER", report.compact.answer is Answer.YES),
        close("essential norm bound is 0", "PAPER", report.essential_norm.bound, 0.0),
        holds("not an isometry", "TRIVIAL", report.isometry.answer is Answer.NO),
        holds("point spectrum is {0, 1}", "DERIVED", spectrum == [(0.0, 0.0), (1.0, 0.0)], repr(spectrum)),
    ]
    image = apply(psi, Radial.constant(q, 1))
    checks.append(
        holds(
            "range of M_psi vanishes beyond the support",
            "PAPER",
            all(image.level_mean(n, INF) == 0 for n in range(v0.level + 1, v0.level + 4)),
        )
    )
    cls = spectrum_classify(psi, 0.5, depth)
    checks.append(holds("1/2 is in the resolvent set", "DERIVED", cls.kind is SpectralKind.RESOLVENT))
    checks.append(close("distance to the spectrum is 1/2", "DERIVED", cls.distance, 0.5))
    checks.append(close("inverse norm is 2", "DERIVED", cls.inverse_norm, 2.0))
    one = spectrum_classify(psi, 1.0, depth)
    checks.append(holds("1 is an eigenvalue witnessed by v0", "TRIVIAL", one.kind is SpectralKind.POINT_SPECTRUM and one.witness == v0))
    res = resolvent_symbol(psi, 3.0, depth=depth)
    checks.append(close("resolvent at 3 has norm 1/2", "DERIVED", operator_norm(res, p, v0.level + 1).value, 0.5))
    return checks


@scenario(
    "unimodular-symbol",
    "a unimodular radial symbol is an isometry and preserves every level mean",
    q=2,
    levels=12,
    seed=1,
    depth=6,
)
def _unimodular(params):
    q, depth = params["q"], params["depth"]
    psi = Symbol(Radial.from_values(q, [cmath.exp(1j * n) for n in range(params["levels"])], "last"))
    verdict = isometry_verdict(psi, depth)
    rng = np.random.default_rng(params["seed"])
    geo = TreeGeometry(q)
    worst = 0.0
    for _ in range(10):
        entries = {}
        for _ in range(6):
            n = int(rng.integers(0, depth + 1))
            v = VertexId(n, int(rng.integers(0, geo.level_size(n))))
            entries[v] = complex(rng.normal(), rng.normal())
        f = FiniteSupport(q, entries)
        image = apply(psi, f)
        for p in (0.5, 1.0, 2.0, INF):
            for n in range(depth + 1):
                worst = max(worst, _rel(level_mean(image, n, p), level_mean(f, n, p)))
    bad = Symbol(Radial.from_values(q, [1, 1, 1.5], "last"))
    no = isometry_verdict(bad, depth)
    return [
        holds("isometry certified", "PAPER", verdict.answer is Answer.YES),
        Check("level means preserved", "PAPER", worst <= 1e-12, worst),
        holds("|psi| = 1.5 on level 2 is not an isometry", "PAPER", no.answer is Answer.NO and no.witness.level == 2),
    ]


@scenario(
    "vanishing-symbol",
    "psi = 1/(n+1) gives a compact operator with 0 in the spectrum but not in the range",
    q=2,
    p=2.0,
    depth=20,
)
def _vanishing(params):
    q, p, depth = params["q"], params["p"], params["depth"]
    psi = Symbol(Radial.from_rule(q, lambda n: 1 / (n + 1), Tail.vanishing(bound=1.0, sharp=True)))
    checks = [
        holds("compact", "TRIVIAL", compactness_verdict(psi, depth).answer is Answer.YES),
        close("essential norm bound is 0", "PAPER", essential_norm_upper(psi, depth).bound, 0.0),
        holds("0 lies in the closure of the range", "PAPER", spectrum_classify(psi, 0, depth).kind is SpectralKind.IN_CLOSURE),
    ]
    try:
        resolvent_symbol(psi, 0, depth=depth)
        refused = False
    except NotInvertible:
        refused = True
    checks.append(holds("M_psi is not invertible", "PAPER", refused))
    fs = [normalized_point_mass(q, leftmost_path_vertex(k), p) for k in range(1, 11)]
    seq = pointwise_null_sequence_check(psi, fs, p, 12)
    worst = max(_rel(x, 1 / (k + 1)) for k, x in zip(range(1, 11), seq))
    checks.append(Check("||psi f_k|| = |psi(v_k)| -> 0", "DERIVED", worst <= CHECK_TOL, worst))
    sample = point_spectrum_sample(psi, 4)
    want = [1 / (n + 1) for n in range(5)]
    checks.append(holds("sampled point spectrum is {1, 1/2, ..., 1/5}", "TRIVIAL", [z.real for z in sample.values] == want))
    return checks


@scenario(
    "unbounded-symbol",
    "psi(v) = |v| is unbounded; normalized point masses witness the blow-up",
    q=2,
    p=2.0,
    depth=20,
)
def _unbounded(params):
    q, p, depth = params["q"], params["p"], params["depth"]
    psi = Symbol(Radial.from_values(q, [0, 1], "linear"))
    report = analyze(psi, p, depth)
    lower = [delta_lower_bound(psi, p, [leftmost_path_vertex(k)]) for k in range(1, depth + 1)]
    worst = max(_rel(x, float(k)) for k, x in zip(range(1, depth + 1), lower))
    return [
        holds("bounded = no", "PAPER", report.bounded.answer is Answer.NO),
        Check("||M_psi (C_k chi_{v_k})||_p = k", "PAPER", worst <= CHECK_TOL, worst),
    ]


@scenario(
    "essential-norm",
    "essential norm bounds for psi = 1 + 1/(n+1) and a constant symbol",
    q=2,
    depth=15,
    c=[0.6, -0.8],
)
def _essential(params):
    q, depth = params["q"], params["depth"]
    psi = Symbol(Radial.from_rule(q, lambda n: 1 + 1 / (n + 1), Tail.bounded(bound=2.0, sharp=True, limit=1.0)))
    bound = essential_norm_upper(psi, depth)
    want = [1 + 1 / (n + 1) for n in range(depth + 1)]
    worst = max(_rel(b, w) for b, w in zip(bound.sequence, want))
    c = complex(*params["c"])
    const = essential_norm_upper(Symbol(Radial.constant(q, c)), depth)
    return [
        Check("b_n = 1 + 1/(n+1)", "DERIVED", worst <= CHECK_TOL, worst),
        holds("b_n is nonincreasing", "TRIVIAL", all(a >= b for a, b in zip(bound.sequence, bound.sequence[1:]))),
        close("certified bound is the limit 1", "DERIVED", bound.bound, 1.0),
        holds("constant symbol gives |c| at every level", "TRIVIAL", all(abs(b - abs(c)) <= 1e-15 for b in const.sequence) and const.bound == abs(c)),
    ]
