"""Function representations on the tree and their level means.

Five representations are supported. Each one evaluates pointwise and computes
the level mean ``M_p(n, f)``, in closed form where the structure allows it and
by enumerating the level otherwise:

* ``FiniteSupport``  - finitely many nonzero vertices (closed form)
* ``Radial``         - value depends on the level only (closed form)
* ``PathSupported``  - nonzero only on the leftmost path ``(n, 0)`` (closed form)
* ``DenseTruncated`` - explicit arrays for levels ``0..D-1``, zero deeper (enumerated)
* ``PointwiseRule``  - an arbitrary callable (enumerated, never exact)

Radial and path-supported functions are driven by a ``LevelSequence``: either
an explicit list of values with a rule for extending it past its end, or an
opaque callable paired with a declared ``Tail``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property, partial
from typing import Callable, Iterable, Mapping

import numpy as np
from scipy.special import logsumexp

from .errors import LevelTooLarge, TailMismatch
from .tree import ROOT, TreeGeometry, VertexId, enumeration_cap

INF = math.inf
REL_TOL = 1e-12


def as_exponent(p) -> float:
    """Validate an exponent in ``(0, inf]``; accepts numbers and ``"inf"``."""
    if isinstance(p, str):
        text = p.strip().lower()
        p = INF if text in ("inf", "infinity", "oo") else float(text)
    p = float(p)
    if math.isnan(p) or p <= 0:
        raise ValueError(f"exponent must lie in (0, inf], got {p}")
    return p


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return INF


def mean_of_moduli(moduli: np.ndarray, log_count: float, p: float) -> float:
    """Normalized p-mean of ``moduli`` over a level of ``exp(log_count)`` vertices.

    Vertices not listed in ``moduli`` count as zeros. Finite ``p`` is
    accumulated in the log domain so that huge values do not overflow.
    """
    if moduli.size == 0:
        return 0.0
    if math.isinf(p):
        return float(moduli.max())
    with np.errstate(divide="ignore"):
        logs = p * np.log(moduli)
    if np.isneginf(logs).all():
        return 0.0
    return _safe_exp((float(logsumexp(logs)) - log_count) / p)


# -- tails ---------------------------------------------------------------------


class TailKind(str, enum.Enum):
    VANISHING = "vanishing"
    BOUNDED = "bounded"
    DIVERGENT = "divergent"
    UNKNOWN = "unknown"


class Behaviour(enum.Enum):
    """What is known about the sequence of level means as the level grows."""

    VANISHING = "vanishing"
    BOUNDED_AWAY = "bounded, not vanishing"
    BOUNDED = "bounded"
    UNBOUNDED = "unbounded"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Tail:
    """Declared behaviour of a level sequence ``s_n`` that computation cannot observe.

    ``bound`` is an upper bound on ``|s_n|`` over all levels, and ``sharp``
    marks it as the least upper bound. ``limit`` is ``limsup |s_n|`` and
    ``lower`` a lower bound on ``|s_n|`` over all levels. A vanishing tail has
    limit 0 and a divergent one is unbounded.
    """

    kind: TailKind = TailKind.UNKNOWN
    bound: float | None = None
    sharp: bool = False
    limit: float | None = None
    lower: float | None = None

    def __post_init__(self):
        kind = TailKind(self.kind)
        object.__setattr__(self, "kind", kind)
        for name in ("bound", "limit", "lower"):
            value = getattr(self, name)
            if value is not None:
                value = float(value)
                if math.isnan(value) or value < 0:
                    raise ValueError(f"tail {name} must be nonnegative, got {value}")
                object.__setattr__(self, name, value)
        if kind is TailKind.VANISHING:
            if self.limit not in (None, 0.0):
                raise ValueError("a vanishing tail has limit 0")
            object.__setattr__(self, "limit", 0.0)
        if kind is TailKind.DIVERGENT:
            if self.bound is not None:
                raise ValueError("a divergent tail cannot carry a bound")
            object.__setattr__(self, "limit", INF)
        if self.sharp and self.bound is None:
            raise ValueError("sharp requires a bound")
        if self.bound is not None:
            for name in ("limit", "lower"):
                value = getattr(self, name)
                if value is not None and value > self.bound * (1 + REL_TOL):
                    raise ValueError(f"tail {name} {value} exceeds bound {self.bound}")

    @classmethod
    def vanishing(cls, bound=None, sharp=False) -> Tail:
        return cls(TailKind.VANISHING, bound=bound, sharp=sharp)

    @classmethod
    def bounded(cls, bound=None, sharp=False, limit=None, lower=None) -> Tail:
        return cls(TailKind.BOUNDED, bound=bound, sharp=sharp, limit=limit, lower=lower)

    @classmethod
    def divergent(cls, lower=None) -> Tail:
        return cls(TailKind.DIVERGENT, lower=lower)

    @classmethod
    def unimodular(cls) -> Tail:
        return cls(TailKind.BOUNDED, bound=1.0, sharp=True, limit=1.0, lower=1.0)

    @property
    def is_bounded(self) -> bool:
        return self.kind in (TailKind.VANISHING, TailKind.BOUNDED) or self.bound is not None

    def scaled(self, c: complex) -> Tail:
        r = abs(c)
        if r == 0:
            return Tail.vanishing(bound=0.0, sharp=True)
        mul = lambda x: None if x is None else x * r  # noqa: E731
        limit = None if self.kind in (TailKind.VANISHING, TailKind.DIVERGENT) else mul(self.limit)
        return Tail(self.kind, bound=mul(self.bound), sharp=self.sharp, limit=limit, lower=mul(self.lower))


def behaviour(tail: Tail, e: float) -> Behaviour:
    """Behaviour of ``|s_n| * level_size(n)**e`` given the tail of ``s``."""
    if e == 0:
        if tail.kind is TailKind.VANISHING or tail.limit == 0:
            return Behaviour.VANISHING
        if tail.kind is TailKind.DIVERGENT:
            return Behaviour.UNBOUNDED
        if tail.is_bounded:
            if (tail.limit or 0) > 0 or (tail.lower or 0) > 0:
                return Behaviour.BOUNDED_AWAY
            return Behaviour.BOUNDED
        return Behaviour.UNKNOWN
    if e < 0:
        return Behaviour.VANISHING if tail.is_bounded else Behaviour.UNKNOWN
    if tail.kind is TailKind.DIVERGENT or (tail.limit or 0) > 0 or (tail.lower or 0) > 0:
        return Behaviour.UNBOUNDED
    if tail.bound == 0:
        return Behaviour.VANISHING
    return Behaviour.UNKNOWN


def _sum_tail(s: Tail, t: Tail) -> Tail:
    bound = s.bound + t.bound if s.bound is not None and t.bound is not None else None
    vanish = (s.kind is TailKind.VANISHING, t.kind is TailKind.VANISHING)
    if all(vanish):
        return Tail.vanishing(bound=bound)
    if (s.kind is TailKind.DIVERGENT and t.is_bounded) or (t.kind is TailKind.DIVERGENT and s.is_bounded):
        return Tail.divergent()
    if s.is_bounded and t.is_bounded:
        # limsup|x + y| = limsup|x| when y -> 0
        limit = t.limit if vanish[0] else s.limit if vanish[1] else None
        return Tail.bounded(bound=bound, limit=limit)
    return Tail()


def _product_tail(s: Tail, t: Tail) -> Tail:
    bound = s.bound * t.bound if s.bound is not None and t.bound is not None else None
    lower = s.lower * t.lower if s.lower is not None and t.lower is not None else None
    if (s.limit == 0 and t.is_bounded) or (t.limit == 0 and s.is_bounded):
        return Tail.vanishing(bound=bound)
    if (s.kind is TailKind.DIVERGENT and (t.lower or 0) > 0) or (
        t.kind is TailKind.DIVERGENT and (s.lower or 0) > 0
    ):
        return Tail.divergent()
    if s.is_bounded and t.is_bounded:
        return Tail.bounded(bound=bound, lower=lower)
    return Tail(lower=lower) if lower else Tail()


# -- level sequences -----------------------------------------------------------

EXTENSIONS = ("zero", "last", "linear")


def _extended_value(values: tuple, extend: str, n: int) -> complex:
    if n < len(values):
        return values[n]
    if extend == "zero":
        return 0j
    if extend == "last":
        return values[-1]
    return values[-1] + (n - len(values) + 1) * (values[-1] - values[-2])


def _canonical(values: tuple, extend: str) -> tuple[tuple, str]:
    if extend not in EXTENSIONS:
        raise ValueError(f"extend must be one of {EXTENSIONS}, got {extend!r}")
    if extend == "linear" and (len(values) < 2 or values[-1] == values[-2]):
        extend = "last"
    if extend == "last" and (not values or values[-1] == 0):
        extend = "zero"
    if extend == "zero":
        values = list(values)
        while values and values[-1] == 0:
            values.pop()
        values = tuple(values)
    return values, extend


def _derived_tail(values: tuple, extend: str) -> Tail:
    moduli = [abs(v) for v in values]
    top = max(moduli, default=0.0)
    if extend == "zero":
        return Tail(TailKind.VANISHING, bound=top, sharp=True, lower=0.0)
    if extend == "last":
        return Tail(TailKind.BOUNDED, bound=top, sharp=True, limit=moduli[-1], lower=min(moduli))
    return Tail.divergent()


@dataclass(frozen=True, eq=False)
class LevelSequence:
    """A complex sequence indexed by level, ``n -> s_n``.

    Explicit sequences (built with ``from_values``) are fully known: their tail
    is derived, not declared. Rule-based sequences rely on the caller's tail.
    """

    rule: Callable[[int], complex]
    tail: Tail = field(default_factory=Tail)
    values: tuple | None = None
    extend: str | None = None

    @classmethod
    def from_values(cls, values: Iterable, extend: str = "zero") -> LevelSequence:
        vals, extend = _canonical(tuple(complex(v) for v in values), extend)
        return cls(partial(_extended_value, vals, extend), _derived_tail(vals, extend), vals, extend)

    @classmethod
    def from_rule(cls, rule: Callable[[int], complex], tail: Tail | None = None) -> LevelSequence:
        return cls(rule, tail if tail is not None else Tail())

    @classmethod
    def zeros(cls) -> LevelSequence:
        return cls.from_values((), "zero")

    @property
    def explicit(self) -> bool:
        return self.values is not None

    def __call__(self, n: int) -> complex:
        value = complex(self.rule(n))
        tail = self.tail
        if not self.explicit:
            r = abs(value)
            if tail.bound is not None and r > tail.bound * (1 + REL_TOL):
                raise TailMismatch(f"|s_{n}| = {r} exceeds declared bound {tail.bound}")
            if tail.lower is not None and r < tail.lower * (1 - REL_TOL):
                raise TailMismatch(f"|s_{n}| = {r} is below declared lower bound {tail.lower}")
        return value

    def prefix(self, n: int) -> list[complex]:
        return [self(k) for k in range(n + 1)]

    def scaled_sum(self, a: complex, other: LevelSequence, b: complex) -> LevelSequence:
        """The sequence ``a*self + b*other``."""
        if self.explicit and other.explicit:
            length = max(len(self.values), len(other.values)) + 2
            return LevelSequence.from_values([a * self(n) + b * other(n) for n in range(length)], "linear")
        if b == 0:
            return LevelSequence.from_rule(lambda n: a * self(n), self.tail.scaled(a))
        if a == 0:
            return LevelSequence.from_rule(lambda n: b * other(n), other.tail.scaled(b))
        tail = _sum_tail(self.tail.scaled(a), other.tail.scaled(b))
        return LevelSequence.from_rule(lambda n: a * self(n) + b * other(n), tail)

    def times(self, other: LevelSequence) -> LevelSequence:
        if self.explicit and other.explicit:
            extends = {self.extend, other.extend}
            if "zero" in extends or extends == {"last"}:
                length = max(len(self.values), len(other.values)) + 1
                extend = "zero" if "zero" in extends else "last"
                return LevelSequence.from_values([self(n) * other(n) for n in range(length)], extend)
        return LevelSequence.from_rule(lambda n: self(n) * other(n), _product_tail(self.tail, other.tail))


# -- representations -----------------------------------------------------------


class FunctionRep:
    """Common interface of all representations; instances are immutable."""

    q: int
    closed_form = True

    @cached_property
    def geometry(self) -> TreeGeometry:
        return TreeGeometry(self.q)

    @property
    def method(self) -> str:
        return "closed-form" if self.closed_form else "enumerated"

    def evaluate(self, v) -> complex:
        raise NotImplementedError

    def __call__(self, v) -> complex:
        return self.evaluate(v)

    def level_mean(self, n: int, p) -> float:
        raise NotImplementedError

    def level_values(self, n: int) -> list[tuple[complex, VertexId]]:
        """Values taken on level ``n``, each with a vertex attaining it.

        Duplicates may be present; every value of the level is listed.
        """
        raise NotImplementedError

    def behaviour(self, p) -> Behaviour:
        return Behaviour.UNKNOWN

    def deeper_sup(self, p, depth: int) -> tuple[float | None, bool, int | None]:
        """Information on ``sup_{n > depth} M_p(n, f)``.

        Returns ``(value, exact, level)``: an exact value (with the level
        attaining it, if known), an upper bound (``exact`` false), or
        ``None`` when nothing is known.
        """
        return None, False, None

    def declared_sup(self, p) -> float | None:
        """Least upper bound of all level means, when declared by the caller."""
        return None

    def known_range(self) -> list[tuple[complex, VertexId]] | None:
        """Every value of the function with a witness, when the range is finite and known."""
        return None

    @property
    def support_depth(self) -> int | None:
        """Deepest level carrying a nonzero value, for finitely supported representations."""
        return None


def _check_vertex(geo: TreeGeometry, v) -> VertexId:
    level, index = v
    if not geo.contains((level, index)):
        raise ValueError(f"{(level, index)} is not a vertex of the tree with q={geo.q}")
    return VertexId(int(level), int(index))


def _enumerate_values(f: FunctionRep, n: int) -> np.ndarray:
    geo = f.geometry
    return np.fromiter((f.evaluate(v) for v in geo.enumerate_level(n)), dtype=complex, count=geo.level_size(n))


@dataclass(frozen=True, eq=False)
class FiniteSupport(FunctionRep):
    """Finitely many keyed vertices; every other vertex maps to 0."""

    q: int
    entries: Mapping = field(default_factory=dict)

    def __post_init__(self):
        geo = TreeGeometry(self.q)
        entries = {_check_vertex(geo, v): complex(x) for v, x in dict(self.entries).items()}
        object.__setattr__(self, "entries", entries)

    @cached_property
    def _by_level(self) -> dict[int, list[tuple[VertexId, complex]]]:
        levels: dict[int, list] = {}
        for v, x in sorted(self.entries.items()):
            levels.setdefault(v.level, []).append((v, x))
        return levels

    def evaluate(self, v) -> complex:
        return self.entries.get(VertexId(*v), 0j)

    def level_mean(self, n, p):
        p = as_exponent(p)
        items = self._by_level.get(n, ())
        moduli = np.array([abs(x) for _, x in items], dtype=float)
        if n == 0:
            return float(moduli[0]) if moduli.size else 0.0
        return mean_of_moduli(moduli, self.geometry.log_level_size(n), p)

    def level_values(self, n):
        items = self._by_level.get(n, [])
        out = [(x, v) for v, x in items]
        if len(items) < self.geometry.level_size(n):
            taken = {v.index for v, _ in items}
            free = next(i for i in range(len(items) + 1) if i not in taken)
            out.append((0j, VertexId(n, free)))
        return out

    @property
    def support_depth(self) -> int:
        levels = [v.level for v, x in self.entries.items() if x != 0]
        return max(levels, default=-1)

    def behaviour(self, p):
        return Behaviour.VANISHING

    def deeper_sup(self, p, depth):
        best, level = 0.0, None
        for n in self._by_level:
            if n > depth:
                m = self.level_mean(n, p)
                if m > best:
                    best, level = m, n
        return best, True, level

    def known_range(self):
        out = [(x, v) for v, x in sorted(self.entries.items())]
        outside = max((v.level for v in self.entries), default=-1) + 1
        out.append((0j, VertexId(outside, 0)))
        return out


@dataclass(frozen=True, eq=False)
class DenseTruncated(FunctionRep):
    """Explicit values on levels ``0 .. len(levels) - 1``; zero on deeper levels."""

    q: int
    levels: tuple = ()
    closed_form = False

    def __post_init__(self):
        geo = TreeGeometry(self.q)
        cap = enumeration_cap()
        arrays = []
        for n, row in enumerate(self.levels):
            size = geo.level_size(n)
            if size > cap:
                raise LevelTooLarge(n, size, cap)
            arr = np.array(row, dtype=complex).reshape(-1)
            if arr.size != size:
                raise ValueError(f"level {n} needs {size} values, got {arr.size}")
            arr.setflags(write=False)
            arrays.append(arr)
        object.__setattr__(self, "levels", tuple(arrays))

    @property
    def depth(self) -> int:
        return len(self.levels)

    def evaluate(self, v):
        level, index = _check_vertex(self.geometry, v)
        if level >= self.depth:
            return 0j
        return complex(self.levels[level][index])

    def level_mean(self, n, p):
        p = as_exponent(p)
        if n >= self.depth:
            return 0.0
        moduli = np.abs(self.levels[n])
        if n == 0:
            return float(moduli[0])
        return mean_of_moduli(moduli, self.geometry.log_level_size(n), p)

    def level_values(self, n):
        if n >= self.depth:
            return [(0j, VertexId(n, 0))]
        return [(complex(x), VertexId(n, i)) for i, x in enumerate(self.levels[n])]

    @property
    def support_depth(self) -> int:
        nonzero = [n for n, arr in enumerate(self.levels) if np.any(arr != 0)]
        return max(nonzero, default=-1)

    def behaviour(self, p):
        return Behaviour.VANISHING

    def deeper_sup(self, p, depth):
        best, level = 0.0, None
        for n in range(depth + 1, self.depth):
            m = self.level_mean(n, p)
            if m > best:
                best, level = m, n
        return best, True, level

    def known_range(self):
        out = [pair for n in range(self.depth) for pair in self.level_values(n)]
        out.append((0j, VertexId(self.depth, 0)))
        return out


@dataclass(frozen=True, eq=False)
class PointwiseRule(FunctionRep):
    """An opaque rule ``VertexId -> complex``; the rule must be side-effect free."""

    q: int
    rule: Callable[[VertexId], complex]
    closed_form = False

    def evaluate(self, v):
        return complex(self.rule(_check_vertex(self.geometry, v)))

    def level_mean(self, n, p):
        p = as_exponent(p)
        if n == 0:
            return abs(self.evaluate(ROOT))
        moduli = np.abs(_enumerate_values(self, n))
        return mean_of_moduli(moduli, self.geometry.log_level_size(n), p)

    def level_values(self, n):
        return [(complex(x), VertexId(n, i)) for i, x in enumerate(_enumerate_values(self, n))]


@dataclass(frozen=True, eq=False)
class Radial(FunctionRep):
    """``f(v) = a_{|v|}``: constant on every level."""

    q: int
    seq: LevelSequence

    def __post_init__(self):
        TreeGeometry(self.q)

    @classmethod
    def from_values(cls, q: int, values: Iterable, extend: str = "zero") -> Radial:
        return cls(q, LevelSequence.from_values(values, extend))

    @classmethod
    def from_rule(cls, q: int, rule: Callable[[int], complex], tail: Tail | None = None) -> Radial:
        return cls(q, LevelSequence.from_rule(rule, tail))

    @classmethod
    def constant(cls, q: int, c: complex) -> Radial:
        return cls.from_values(q, [c], "last")

    @property
    def tail(self) -> Tail:
        return self.seq.tail

    def evaluate(self, v):
        level, _ = _check_vertex(self.geometry, v)
        return self.seq(level)

    def level_mean(self, n, p):
        as_exponent(p)
        return abs(self.seq(n))

    def level_values(self, n):
        return [(self.seq(n), VertexId(n, 0))]

    def behaviour(self, p):
        return behaviour(self.seq.tail, 0.0)

    def deeper_sup(self, p, depth):
        return _deeper(self.seq, lambda n: abs(self.seq(n)), 0.0, self.behaviour(p), depth, self.geometry)

    def declared_sup(self, p):
        return self.seq.tail.bound if self.seq.tail.sharp else None

    def known_range(self):
        seq = self.seq
        if not seq.explicit or seq.extend == "linear":
            return None
        out = [(x, VertexId(n, 0)) for n, x in enumerate(seq.values)]
        if seq.extend == "zero":
            out.append((0j, VertexId(len(seq.values), 0)))
        return out


@dataclass(frozen=True, eq=False)
class PathSupported(FunctionRep):
    """Nonzero only on the leftmost path: ``f((n, 0)) = s_n * level_size(n)**growth``.

    ``growth`` lets the coefficients grow with the level size while the tail
    describes the normalized sequence ``s_n``; the level mean at exponent
    ``p`` is then ``|s_n| * level_size(n)**(growth - 1/p)``.
    """

    q: int
    seq: LevelSequence
    growth: float = 0.0

    def __post_init__(self):
        TreeGeometry(self.q)
        object.__setattr__(self, "growth", float(self.growth))

    @classmethod
    def from_values(cls, q: int, values: Iterable, extend: str = "zero", growth: float = 0.0) -> PathSupported:
        return cls(q, LevelSequence.from_values(values, extend), growth)

    @classmethod
    def from_rule(cls, q, rule, tail=None, growth=0.0) -> PathSupported:
        return cls(q, LevelSequence.from_rule(rule, tail), growth)

    @property
    def tail(self) -> Tail:
        return self.seq.tail

    def coefficient(self, n: int) -> complex:
        s = self.seq(n)
        if self.growth == 0 or s == 0:
            return s
        return s * _safe_exp(self.growth * self.geometry.log_level_size(n))

    def evaluate(self, v):
        level, index = _check_vertex(self.geometry, v)
        return self.coefficient(level) if index == 0 else 0j

    def _exponent_gap(self, p) -> float:
        p = as_exponent(p)
        return self.growth - (0.0 if math.isinf(p) else 1.0 / p)

    def level_mean(self, n, p):
        e = self._exponent_gap(p)
        s = abs(self.seq(n))
        if n == 0 or s == 0:
            return s
        return _safe_exp(math.log(s) + e * self.geometry.log_level_size(n))

    def level_values(self, n):
        out = [(self.coefficient(n), VertexId(n, 0))]
        if n >= 1:
            out.append((0j, VertexId(n, 1)))
        return out

    def behaviour(self, p):
        return behaviour(self.seq.tail, self._exponent_gap(p))

    def deeper_sup(self, p, depth):
        e = self._exponent_gap(p)
        return _deeper(self.seq, lambda n: self.level_mean(n, p), e, self.behaviour(p), depth, self.geometry)

    def declared_sup(self, p):
        tail = self.seq.tail
        return tail.bound if tail.sharp and self._exponent_gap(p) == 0 else None

    def known_range(self):
        seq = self.seq
        if not seq.explicit or seq.extend == "linear" or (self.growth != 0 and seq.extend != "zero"):
            return None
        out = [(self.coefficient(n), VertexId(n, 0)) for n in range(len(seq.values))]
        out.append((0j, VertexId(1, 1)))
        return out


def _deeper(seq, mean, e, beh, depth, geo):
    if beh is Behaviour.UNBOUNDED:
        return INF, True, None
    if seq.explicit and seq.extend != "linear" and (seq.extend == "zero" or e <= 0):
        # past the stored values the means are zero, or nonincreasing when e <= 0
        stop = len(seq.values) if seq.extend == "zero" else max(len(seq.values) - 1, depth + 1) + 1
        best, level = 0.0, None
        for n in range(depth + 1, stop):
            m = mean(n)
            if m > best:
                best, level = m, n
        return best, True, level
    bound = seq.tail.bound
    if bound is None:
        return None, False, None
    if e == 0:
        return bound, False, None
    if e < 0:
        return bound * _safe_exp(e * geo.log_level_size(depth + 1)), False, None
    return (0.0, True, None) if bound == 0 else (None, False, None)


# -- algebra -------------------------------------------------------------------


def zero(q: int) -> FiniteSupport:
    return FiniteSupport(q, {})


def point_mass(q: int, v, value: complex = 1.0) -> FiniteSupport:
    """``value * chi_{v}``."""
    return FiniteSupport(q, {VertexId(*v): value})


def scale(c: complex, f: FunctionRep) -> FunctionRep:
    c = complex(c)
    if isinstance(f, FiniteSupport):
        return FiniteSupport(f.q, {v: c * x for v, x in f.entries.items()})
    if isinstance(f, DenseTruncated):
        return DenseTruncated(f.q, tuple(c * arr for arr in f.levels))
    if isinstance(f, Radial):
        return Radial(f.q, f.seq.scaled_sum(c, LevelSequence.zeros(), 0))
    if isinstance(f, PathSupported):
        return PathSupported(f.q, f.seq.scaled_sum(c, LevelSequence.zeros(), 0), f.growth)
    return PointwiseRule(f.q, lambda v: c * f.evaluate(v))


def to_dense(f: FunctionRep, depth: int) -> DenseTruncated:
    """Values of ``f`` on levels ``0 .. depth - 1`` (enumerates, honours the cap)."""
    geo = f.geometry
    levels = []
    for n in range(depth):
        if isinstance(f, FiniteSupport):
            geo.check_enumerable(n)
            row = np.zeros(geo.level_size(n), dtype=complex)
            for v, x in f._by_level.get(n, ()):
                row[v.index] = x
        elif isinstance(f, DenseTruncated):
            row = f.levels[n] if n < f.depth else np.zeros(geo.check_enumerable(n), dtype=complex)
        else:
            row = _enumerate_values(f, n)
        levels.append(row)
    return DenseTruncated(f.q, tuple(levels))


def _same_tree(f: FunctionRep, g: FunctionRep) -> int:
    if f.q != g.q:
        raise ValueError(f"functions live on different trees (q={f.q} and q={g.q})")
    return f.q


def linear_combination(a: complex, f: FunctionRep, b: complex, g: FunctionRep) -> FunctionRep:
    """``a*f + b*g`` in the most structured representation that holds it."""
    q = _same_tree(f, g)
    a, b = complex(a), complex(b)
    if b == 0:
        return scale(a, f)
    if a == 0:
        return scale(b, g)
    if isinstance(f, Radial) and isinstance(g, Radial):
        return Radial(q, f.seq.scaled_sum(a, g.seq, b))
    if isinstance(f, PathSupported) and isinstance(g, PathSupported) and f.growth == g.growth:
        return PathSupported(q, f.seq.scaled_sum(a, g.seq, b), f.growth)
    if isinstance(f, FiniteSupport) and isinstance(g, FiniteSupport):
        entries = {v: a * x for v, x in f.entries.items()}
        for v, x in g.entries.items():
            entries[v] = entries.get(v, 0j) + b * x
        return FiniteSupport(q, entries)
    finite = (FiniteSupport, DenseTruncated)
    if isinstance(f, finite) and isinstance(g, finite):
        depth = max(f.support_depth, g.support_depth) + 1
        df, dg = to_dense(f, depth), to_dense(g, depth)
        return DenseTruncated(q, tuple(a * x + b * y for x, y in zip(df.levels, dg.levels)))
    return PointwiseRule(q, lambda v: a * f.evaluate(v) + b * g.evaluate(v))


def multiply(f: FunctionRep, g: FunctionRep) -> FunctionRep:
    """Pointwise product ``f * g``."""
    q = _same_tree(f, g)
    if isinstance(f, FiniteSupport) or isinstance(g, FiniteSupport):
        finite, other = (f, g) if isinstance(f, FiniteSupport) else (g, f)
        return FiniteSupport(q, {v: x * other.evaluate(v) for v, x in finite.entries.items()})
    if isinstance(f, DenseTruncated) or isinstance(g, DenseTruncated):
        dense, other = (f, g) if isinstance(f, DenseTruncated) else (g, f)
        rows = []
        for n, arr in enumerate(dense.levels):
            if isinstance(other, Radial):
                rows.append(arr * other.seq(n))
            else:
                rows.append(arr * np.array([other.evaluate((n, i)) for i in range(arr.size)], dtype=complex))
        return DenseTruncated(q, tuple(rows))
    if isinstance(f, Radial) and isinstance(g, Radial):
        return Radial(q, f.seq.times(g.seq))
    if isinstance(f, (Radial, PathSupported)) and isinstance(g, (Radial, PathSupported)):
        growth = (f.growth if isinstance(f, PathSupported) else 0.0) + (
            g.growth if isinstance(g, PathSupported) else 0.0
        )
        return PathSupported(q, f.seq.times(g.seq), growth)
    return PointwiseRule(q, lambda v: f.evaluate(v) * g.evaluate(v))
