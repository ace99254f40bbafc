"""Level means, norms and membership for the spaces T_p and T_{p,0}."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidExponents, TailMismatch
from .functions import (
    INF,
    REL_TOL,
    Behaviour,
    DenseTruncated,
    FiniteSupport,
    FunctionRep,
    LevelSequence,
    PathSupported,
    PointwiseRule,
    Radial,
    as_exponent,
    linear_combination,
    to_dense,
)
from .tree import VertexId


class Space(str, enum.Enum):
    TP = "Tp"
    TP0 = "Tp0"


class Membership(str, enum.Enum):
    IN_SPACE = "in_space"
    NOT_IN_SPACE = "not_in_space"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class NormReport:
    """``sup_n M_p(n, f)``.

    When ``exact`` is false, ``value`` is the maximum over the examined levels
    and only a lower bound for the norm.
    """

    value: float
    depth_examined: int
    exact: bool
    attained_level: int | None = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "depth_examined": self.depth_examined,
            "exact": self.exact,
            "attained_level": self.attained_level,
        }


@dataclass(frozen=True)
class MembershipVerdict:
    verdict: Membership
    evidence: str
    means: list[float] = field(default_factory=list)


@dataclass(frozen=True)
class GrowthBound:
    bound: float
    value: float
    ratio: float


@dataclass(frozen=True)
class HolderBounds:
    norm_s: float
    norm_r: float
    upper: float


def evaluate(f: FunctionRep, v) -> complex:
    return f.evaluate(v)


def level_mean(f: FunctionRep, n: int, p) -> float:
    if n < 0:
        raise ValueError(f"level must be nonnegative, got {n}")
    return f.level_mean(n, as_exponent(p))


def level_means(f: FunctionRep, p, depth: int) -> list[float]:
    p = as_exponent(p)
    return [f.level_mean(n, p) for n in range(depth + 1)]


def norm(f: FunctionRep, p, depth: int) -> NormReport:
    """Supremum of the level means, exact when the representation decides the tail."""
    if depth < 0:
        raise ValueError(f"depth must be nonnegative, got {depth}")
    p = as_exponent(p)
    means = level_means(f, p, depth)
    best = max(means)
    arg = means.index(best)
    beyond, exact_beyond, level = f.deeper_sup(p, depth)
    if beyond is not None and exact_beyond:
        if beyond > best:
            return NormReport(beyond, depth, True, level)
        return NormReport(best, depth, True, arg)
    if beyond is not None and beyond <= best:
        return NormReport(best, depth, True, arg)
    declared = f.declared_sup(p)
    if declared is not None:
        if best > declared * (1 + REL_TOL):
            raise TailMismatch(f"observed mean {best} exceeds the declared supremum {declared}")
        attained = arg if best >= declared * (1 - REL_TOL) else None
        return NormReport(max(declared, best), depth, True, attained)
    return NormReport(best, depth, False, arg)


def truncate(f: FunctionRep, n: int) -> FunctionRep:
    """``f`` on levels ``<= n`` and zero deeper."""
    if n < 0:
        raise ValueError(f"truncation level must be nonnegative, got {n}")
    if isinstance(f, FiniteSupport):
        return FiniteSupport(f.q, {v: x for v, x in f.entries.items() if v.level <= n})
    if isinstance(f, DenseTruncated):
        return DenseTruncated(f.q, f.levels[: n + 1])
    if isinstance(f, Radial):
        return Radial(f.q, LevelSequence.from_values(f.seq.prefix(n), "zero"))
    if isinstance(f, PathSupported):
        return PathSupported(f.q, LevelSequence.from_values(f.seq.prefix(n), "zero"), f.growth)
    return to_dense(f, n + 1)


def combine(a: complex, f: FunctionRep, b: complex, g: FunctionRep) -> FunctionRep:
    return linear_combination(a, f, b, g)


def _difference_profile(f: FunctionRep, depth: int):
    """Yield ``(level, max_{|v|=level} |f(v) - f(parent(v))|)`` for ``1 <= level <= depth``."""
    geo = f.geometry
    if isinstance(f, Radial):
        prev = f.seq(0)
        for n in range(1, depth + 1):
            cur = f.seq(n)
            yield n, abs(cur - prev)
            prev = cur
    elif isinstance(f, PathSupported):
        prev = f.coefficient(0)
        for n in range(1, depth + 1):
            cur = f.coefficient(n)
            # off-path children of the previous path vertex exist at the root, or when q >= 2
            off_path = abs(prev) if (n == 1 or geo.q >= 2) else 0.0
            yield n, max(abs(cur - prev), off_path)
            prev = cur
    elif isinstance(f, FiniteSupport):
        best: dict[int, float] = {}
        candidates = set(f.entries)
        for v in f.entries:
            if v.level < depth:
                candidates.update(geo.children(v))
        for v in candidates:
            if 1 <= v.level <= depth:
                d = abs(f.evaluate(v) - f.evaluate(geo.parent(v)))
                best[v.level] = max(best.get(v.level, 0.0), d)
        for n in range(1, depth + 1):
            yield n, best.get(n, 0.0)
    else:
        dense = f if isinstance(f, DenseTruncated) else to_dense(f, depth + 1)
        rows = [dense.levels[n] if n < dense.depth else None for n in range(depth + 1)]
        for n in range(1, depth + 1):
            if rows[n - 1] is None:
                yield n, 0.0
                continue
            parent_vals = np.repeat(rows[n - 1], geo.q + 1 if n == 1 else geo.q)
            cur = rows[n] if rows[n] is not None else np.zeros_like(parent_vals)
            yield n, float(np.abs(cur - parent_vals).max())


def lipschitz_seminorm(f: FunctionRep, depth: int) -> float:
    """``sup |f(v) - f(parent(v))|`` over ``1 <= |v| <= depth``."""
    return max((d for _, d in _difference_profile(f, depth)), default=0.0)


def weighted_lipschitz_seminorm(f: FunctionRep, depth: int) -> float:
    """``sup |v| * |f(v) - f(parent(v))|`` over ``1 <= |v| <= depth``."""
    return max((n * d for n, d in _difference_profile(f, depth)), default=0.0)


def membership(f: FunctionRep, p, space, depth: int) -> MembershipVerdict:
    """Decide membership in T_p or T_{p,0} when the representation allows it."""
    p = as_exponent(p)
    space = Space(space)
    means = level_means(f, p, depth)
    beh = f.behaviour(p)
    if any(math.isinf(m) for m in means):
        beh = Behaviour.UNBOUNDED
    if beh is Behaviour.UNBOUNDED:
        return MembershipVerdict(Membership.NOT_IN_SPACE, "level means are unbounded", means)
    if beh is Behaviour.VANISHING:
        return MembershipVerdict(Membership.IN_SPACE, "level means tend to 0", means)
    if beh is Behaviour.BOUNDED_AWAY:
        if space is Space.TP:
            return MembershipVerdict(Membership.IN_SPACE, "level means are bounded", means)
        return MembershipVerdict(Membership.NOT_IN_SPACE, "level means are bounded away from 0 along a subsequence", means)
    if beh is Behaviour.BOUNDED and space is Space.TP:
        return MembershipVerdict(Membership.IN_SPACE, "level means are bounded", means)
    return MembershipVerdict(
        Membership.INCONCLUSIVE, f"tail of the level means is undecided ({beh.value})", means
    )


def growth_bound(f: FunctionRep, v, p, depth: int) -> GrowthBound:
    """Compare ``|f(v)|`` with ``level_size(|v|)**(1/p) * ||f||_p``."""
    p = as_exponent(p)
    if math.isinf(p):
        raise ValueError("growth bound needs a finite exponent")
    v = VertexId(*v)
    report = norm(f, p, max(depth, v.level))
    scale = math.exp(f.geometry.log_level_size(v.level) / p)
    bound = scale * report.value
    value = abs(f.evaluate(v))
    ratio = value / bound if bound > 0 else 0.0
    return GrowthBound(bound, value, ratio)


def compact_sup_diff(f: FunctionRep, g: FunctionRep, N: int) -> float:
    """``sup |f(v) - g(v)|`` over the ball ``|v| <= N``."""
    if N < 0:
        raise ValueError(f"radius must be nonnegative, got {N}")
    diff = linear_combination(1, f, -1, g)
    return max(diff.level_mean(n, INF) for n in range(N + 1))


def _lp(x: np.ndarray, p: float) -> float:
    top = x.max()
    if top == 0:
        return 0.0
    return float(top * np.sum((x / top) ** p) ** (1.0 / p))


def holder_vector_bounds(x, r: float, s: float) -> HolderBounds:
    """``||x||_s <= ||x||_r <= N**(1/r - 1/s) * ||x||_s`` for ``0 < r < s < inf``."""
    if not (0 < r < s < INF):
        raise InvalidExponents(f"need 0 < r < s < inf, got r={r}, s={s}")
    moduli = np.abs(np.asarray(x, dtype=complex).reshape(-1))
    if moduli.size == 0:
        raise ValueError("vector must be nonempty")
    norm_s = _lp(moduli, s)
    norm_r = _lp(moduli, r)
    upper = moduli.size ** (1.0 / r - 1.0 / s) * norm_s
    return HolderBounds(norm_s, norm_r, upper)


__all__ = [
    "GrowthBound",
    "HolderBounds",
    "Membership",
    "MembershipVerdict",
    "NormReport",
    "PointwiseRule",
    "Space",
    "combine",
    "compact_sup_diff",
    "evaluate",
    "growth_bound",
    "holder_vector_bounds",
    "level_mean",
    "level_means",
    "lipschitz_seminorm",
    "membership",
    "norm",
    "truncate",
    "weighted_lipschitz_seminorm",
]
