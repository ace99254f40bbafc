"""Multiplication operators ``M_psi f = psi * f`` on T_p and T_{p,0}.

Every verdict is three-valued. ``YES``/``NO`` are returned only when the
symbol's representation decides the question on the whole (infinite) tree;
opaque rules examined to a finite depth give ``INCONCLUSIVE`` unless a
counterexample vertex was found.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotInvertible, SpectrumUndecided
from .functions import (
    INF,
    Behaviour,
    DenseTruncated,
    FiniteSupport,
    FunctionRep,
    PathSupported,
    PointwiseRule,
    Radial,
    as_exponent,
    linear_combination,
    multiply,
    point_mass,
)
from .space import NormReport, norm
from .tree import TreeGeometry, VertexId

DEDUP_TOL = 1e-12
DEFAULT_TOL = 1e-9


class Answer(str, enum.Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Symbol:
    """The multiplier ``psi`` of a multiplication operator."""

    psi: FunctionRep

    @property
    def q(self) -> int:
        return self.psi.q

    def __call__(self, v) -> complex:
        return self.psi.evaluate(v)


def _as_symbol(psi) -> Symbol:
    return psi if isinstance(psi, Symbol) else Symbol(psi)


@dataclass(frozen=True)
class OperatorNorm:
    value: float
    exact: bool


@dataclass(frozen=True)
class SpectrumSample:
    """Distinct symbol values seen on levels ``<= depth``, each with an eigenvector witness.

    ``complete`` is set when the sample is the whole range of the symbol, so the
    point spectrum is exactly ``values`` and the spectrum is its (finite) closure.
    ``limit_points`` lists points of the spectrum known to be limits of the range.
    """

    values: list[complex]
    witnesses: list[VertexId]
    depth: int
    complete: bool = False
    limit_points: list[complex] = field(default_factory=list)

    @property
    def closure_note(self) -> str:
        note = "point spectrum = range of psi; spectrum = approximate point spectrum = closure of the range"
        if self.complete:
            return note + "; range is finite and fully sampled, so the closure equals the sample"
        if self.limit_points:
            return note + "; closure adds the listed limit points"
        return note + "; only the sampled part of the range is asserted"

    def to_dict(self) -> dict:
        return {
            "values": [[z.real, z.imag] for z in self.values],
            "witnesses": [[v.level, v.index] for v in self.witnesses],
            "depth": self.depth,
            "complete": self.complete,
            "limit_points": [[z.real, z.imag] for z in self.limit_points],
            "closure_note": self.closure_note,
        }


class SpectralKind(str, enum.Enum):
    POINT_SPECTRUM = "point_spectrum"
    IN_CLOSURE = "in_closure"
    RESOLVENT = "resolvent"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SpectralClass:
    kind: SpectralKind
    witness: VertexId | None = None
    distance: float | None = None
    inverse_norm: float | None = None


@dataclass(frozen=True)
class Verdict:
    """A three-valued answer with its supporting evidence."""

    answer: Answer
    evidence: list[float] = field(default_factory=list)
    witness: VertexId | None = None
    note: str = ""


@dataclass(frozen=True)
class EssentialNormBound:
    """Upper bounds ``b_n = max_{n <= m <= depth} M_inf(m, psi)`` and the final certified bound."""

    sequence: list[float]
    bound: float
    certified: bool
    depth: int


# -- action and norm -----------------------------------------------------------


def apply(psi, f: FunctionRep) -> FunctionRep:
    """``M_psi f``."""
    return multiply(_as_symbol(psi).psi, f)


def sup_norm(psi, depth: int) -> NormReport:
    return norm(_as_symbol(psi).psi, INF, depth)


def operator_norm(psi, p, depth: int) -> OperatorNorm:
    """``||M_psi|| = ||psi||_inf`` for every exponent."""
    as_exponent(p)
    report = sup_norm(psi, depth)
    return OperatorNorm(report.value, report.exact)


def boundedness(psi, depth: int) -> Verdict:
    psi = _as_symbol(psi).psi
    report = norm(psi, INF, depth)
    evidence = [psi.level_mean(n, INF) for n in range(depth + 1)]
    if math.isinf(report.value) or psi.behaviour(INF) is Behaviour.UNBOUNDED:
        return Verdict(Answer.NO, evidence, note="psi is unbounded")
    if report.exact:
        return Verdict(Answer.YES, evidence, note="psi is bounded")
    return Verdict(Answer.INCONCLUSIVE, evidence, note="sup of |psi| is only known on examined levels")


def normalized_point_mass(q: int, v, p) -> FiniteSupport:
    """``C * chi_{v}`` with ``C`` chosen so that its p-norm is 1."""
    p = as_exponent(p)
    v = VertexId(*v)
    if math.isinf(p):
        return point_mass(q, v, 1.0)
    c = math.exp(TreeGeometry(q).log_level_size(v.level) / p)
    return point_mass(q, v, c)


def delta_lower_bound(psi, p, vs) -> float:
    """``max_v ||M_psi (C chi_v)||_p`` over ``vs``; a certified lower bound for ``||M_psi||``."""
    psi = _as_symbol(psi).psi
    p = as_exponent(p)
    best = 0.0
    for v in vs:
        image = multiply(psi, normalized_point_mass(psi.q, v, p))
        best = max(best, norm(image, p, VertexId(*v).level).value)
    return best


# -- spectrum ------------------------------------------------------------------


def _dedup(pairs) -> tuple[list[complex], list[VertexId]]:
    values: list[complex] = []
    witnesses: list[VertexId] = []
    arr = np.empty(0, dtype=complex)
    for z, v in pairs:
        if arr.size and np.min(np.abs(arr - z)) <= DEDUP_TOL:
            continue
        values.append(complex(z))
        witnesses.append(VertexId(*v))
        arr = np.append(arr, z)
    return values, witnesses


def _limit_points(psi: FunctionRep) -> list[complex]:
    if isinstance(psi, (Radial, PathSupported)) and psi.behaviour(INF) is Behaviour.VANISHING:
        return [0j]
    return []


def point_spectrum_sample(psi, depth: int) -> SpectrumSample:
    """Values of ``psi`` on levels ``<= depth``; each ``psi(v)`` is an eigenvalue with eigenvector ``chi_{v}``."""
    psi = _as_symbol(psi).psi
    pairs = [pair for n in range(depth + 1) for pair in psi.level_values(n)]
    if isinstance(psi, (FiniteSupport, DenseTruncated)):
        # zero is always attained outside a finite support
        pairs.extend(pair for pair in psi.known_range() if pair[0] == 0)
    values, witnesses = _dedup(pairs)
    known = psi.known_range()
    complete = known is not None and all(
        min(abs(z - w) for w in values) <= DEDUP_TOL for z, _ in known
    )
    return SpectrumSample(values, witnesses, depth, complete, _limit_points(psi))


def spectrum_classify(psi, lam: complex, depth: int, tol: float = DEFAULT_TOL) -> SpectralClass:
    """Locate ``lam`` relative to the spectrum ``closure(psi(T))``."""
    psi = _as_symbol(psi).psi
    lam = complex(lam)
    sample = point_spectrum_sample(psi, depth)
    if sample.values:
        dists = [abs(z - lam) for z in sample.values]
        i = int(np.argmin(dists))
        if dists[i] <= tol:
            return SpectralClass(SpectralKind.POINT_SPECTRUM, sample.witnesses[i], dists[i])
    known = psi.known_range()
    if known is not None:
        dists = [abs(z - lam) for z, _ in known]
        i = int(np.argmin(dists))
        d = dists[i]
        if d <= tol:
            return SpectralClass(SpectralKind.POINT_SPECTRUM, known[i][1], d)
        return SpectralClass(SpectralKind.RESOLVENT, distance=d, inverse_norm=1.0 / d)
    for z in sample.limit_points:
        if abs(z - lam) <= tol:
            return SpectralClass(SpectralKind.IN_CLOSURE, distance=abs(z - lam))
    return SpectralClass(SpectralKind.INCONCLUSIVE)


def shifted(psi, lam: complex) -> Symbol:
    """The symbol ``psi - lam``, so that ``M_psi - lam*I = M_{psi - lam}``."""
    psi = _as_symbol(psi).psi
    return Symbol(linear_combination(1, psi, -complex(lam), Radial.constant(psi.q, 1)))


def resolvent_symbol(psi, lam: complex, tol: float = DEFAULT_TOL, depth: int = 0) -> Symbol:
    """The symbol ``1/(psi - lam)`` of ``(M_psi - lam)^{-1}``."""
    psi = _as_symbol(psi).psi
    lam = complex(lam)
    cls = spectrum_classify(psi, lam, depth, tol)
    if cls.kind in (SpectralKind.POINT_SPECTRUM, SpectralKind.IN_CLOSURE):
        raise NotInvertible(f"{lam} lies in the spectrum ({cls.kind.value})")
    if cls.kind is SpectralKind.INCONCLUSIVE:
        raise SpectrumUndecided(f"cannot certify that {lam} lies outside the spectrum")
    if isinstance(psi, Radial):
        seq = psi.seq
        values = list(seq.values) + ([0j] if seq.extend == "zero" else [])
        return Symbol(Radial.from_values(psi.q, [1 / (z - lam) for z in values], "last"))
    return Symbol(PointwiseRule(psi.q, lambda v: 1 / (psi.evaluate(v) - lam)))


# -- compactness, essential norm, isometry -------------------------------------


def compactness_verdict(psi, depth: int) -> Verdict:
    """Compact iff ``psi(v) -> 0`` as ``|v| -> inf``."""
    psi = _as_symbol(psi).psi
    evidence = [psi.level_mean(n, INF) for n in range(depth + 1)]
    if isinstance(psi, (FiniteSupport, DenseTruncated)):
        return Verdict(Answer.YES, evidence, note="finitely supported symbol, finite rank operator")
    beh = psi.behaviour(INF)
    if beh is Behaviour.VANISHING:
        return Verdict(Answer.YES, evidence, note="psi tends to 0")
    if beh is Behaviour.UNBOUNDED:
        return Verdict(Answer.NO, evidence, note="psi is unbounded, so M_psi is not even bounded")
    if beh is Behaviour.BOUNDED_AWAY:
        return Verdict(Answer.NO, evidence, note="|psi| stays above some eps > 0 on arbitrarily deep levels")
    return Verdict(Answer.INCONCLUSIVE, evidence, note=f"tail of psi is undecided ({beh.value})")


def essential_norm_upper(psi, depth: int) -> EssentialNormBound:
    """Upper bound ``limsup_n M_inf(n, psi)`` for the essential norm."""
    psi = _as_symbol(psi).psi
    means = [psi.level_mean(n, INF) for n in range(depth + 1)]
    sequence = list(np.maximum.accumulate(means[::-1])[::-1].astype(float))
    if isinstance(psi, (FiniteSupport, DenseTruncated)):
        return EssentialNormBound(sequence, 0.0, True, depth)
    if isinstance(psi, (Radial, PathSupported)):
        beh = psi.behaviour(INF)
        growth = psi.growth if isinstance(psi, PathSupported) else 0.0
        tail = psi.tail
        if beh is Behaviour.VANISHING:
            return EssentialNormBound(sequence, 0.0, True, depth)
        if beh is Behaviour.UNBOUNDED:
            return EssentialNormBound(sequence, INF, True, depth)
        if growth == 0 and tail.limit is not None:
            return EssentialNormBound(sequence, tail.limit, True, depth)
        if growth <= 0 and tail.bound is not None:
            return EssentialNormBound(sequence, tail.bound, True, depth)
    return EssentialNormBound(sequence, sequence[-1], False, depth)


def isometry_verdict(psi, depth: int, tol: float = DEFAULT_TOL) -> Verdict:
    """Isometry iff ``|psi(v)| = 1`` at every vertex."""
    psi = _as_symbol(psi).psi
    evidence = []
    for n in range(depth + 1):
        worst, where = 0.0, None
        for z, v in psi.level_values(n):
            dev = abs(abs(z) - 1.0)
            if dev > worst:
                worst, where = dev, v
        evidence.append(worst)
        if worst > tol:
            return Verdict(Answer.NO, evidence, where, f"|psi({tuple(where)})| = {abs(psi.evaluate(where))}")
    known = psi.known_range()
    if known is not None:
        for z, v in known:
            if abs(abs(z) - 1.0) > tol:
                return Verdict(Answer.NO, evidence, v, f"|psi({tuple(v)})| = {abs(z)}")
        return Verdict(Answer.YES, evidence, note="every value of psi is unimodular")
    if isinstance(psi, Radial):
        tail = psi.tail
        if (
            tail.bound is not None
            and tail.lower is not None
            and abs(tail.bound - 1) <= tol
            and abs(tail.lower - 1) <= tol
        ):
            return Verdict(Answer.YES, evidence, note="declared unimodular tail")
    return Verdict(Answer.INCONCLUSIVE, evidence, note="|psi| = 1 on examined levels only")


def pointwise_null_sequence_check(psi, fs, p, depth: int) -> list[float]:
    """``||psi * f_k||_p`` for each ``f_k``; decays for compact ``M_psi`` on bounded pointwise-null sequences."""
    psi = _as_symbol(psi).psi
    return [norm(multiply(psi, f), p, depth).value for f in fs]


# -- report --------------------------------------------------------------------

BASIS = {
    "operator_norm": "||M_psi|| = ||psi||_inf",
    "bounded": "M_psi is bounded iff psi is a bounded function",
    "spectrum": "point spectrum = psi(T); spectrum = approximate point spectrum = closure of psi(T)",
    "compact": "M_psi is compact iff psi(v) -> 0 as |v| -> inf",
    "essential_norm_upper": "||M_psi||_e <= limsup_n M_inf(n, psi)",
    "isometry": "M_psi is an isometry iff |psi(v)| = 1 for all v",
}


@dataclass(frozen=True)
class OperatorReport:
    sup_norm: NormReport
    operator_norm: OperatorNorm
    bounded: Verdict
    compact: Verdict
    essential_norm: EssentialNormBound
    isometry: Verdict
    spectrum: SpectrumSample
    p: float
    depth: int

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "depth": self.depth,
            "operator_norm": {"value": self.operator_norm.value, "exact": self.operator_norm.exact},
            "bounded": self.bounded.answer.value,
            "compact": self.compact.answer.value,
            "essential_norm_upper": self.essential_norm.sequence,
            "essential_norm_bound": {
                "value": self.essential_norm.bound,
                "certified": self.essential_norm.certified,
            },
            "isometry": self.isometry.answer.value,
            "isometry_witness": None if self.isometry.witness is None else list(self.isometry.witness),
            "spectrum": self.spectrum.to_dict(),
            "basis": dict(BASIS),
        }


def analyze(psi, p, depth: int, tol: float = DEFAULT_TOL) -> OperatorReport:
    """Run every analysis on ``M_psi`` acting on T_p."""
    symbol = _as_symbol(psi)
    p = as_exponent(p)
    report = sup_norm(symbol, depth)
    return OperatorReport(
        sup_norm=report,
        operator_norm=OperatorNorm(report.value, report.exact),
        bounded=boundedness(symbol, depth),
        compact=compactness_verdict(symbol, depth),
        essential_norm=essential_norm_upper(symbol, depth),
        isometry=isometry_verdict(symbol, depth, tol),
        spectrum=point_spectrum_sample(symbol, depth),
        p=p,
        depth=depth,
    )
