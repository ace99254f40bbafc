"""JSON documents for functions and deterministic report output.

Function documents::

    {"kind": "finite", "q": 3, "entries": [[level, index, re, im], ...]}
    {"kind": "radial", "q": 3, "values": [[re, im], ...],
     "extend": "zero|last|linear", "tail": "vanishing|bounded|divergent|unknown",
     "bound": 1.0}
    {"kind": "path", ... same as radial ..., "growth": 0.5}
    {"kind": "dense", "q": 2, "levels": [[[re, im], ...], ...]}

Radial and path values cover levels ``0..len-1``; ``extend`` says how the
sequence continues (zeros, repeat the last value, or continue linearly). The
declared ``tail`` and ``bound`` are checked against the tail those values
imply. Path coefficients are ``values[n] * level_size(n)**growth``.
Functions given by an opaque rule cannot be serialized.
"""
from __future__ import annotations

import json
import math

from .errors import DocumentError, NotSerializable
from .functions import (
    DenseTruncated,
    FiniteSupport,
    FunctionRep,
    PathSupported,
    Radial,
    TailKind,
)
from .tree import VertexId


def _complex(item) -> complex:
    if isinstance(item, (int, float)) and not isinstance(item, bool):
        return complex(item)
    if isinstance(item, (list, tuple)) and len(item) == 2 and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in item
    ):
        return complex(item[0], item[1])
    raise DocumentError(f"expected a number or [re, im], got {item!r}")


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _default_extend(tail: str | None) -> str:
    return {"divergent": "linear", "bounded": "last"}.get(tail, "zero")


def _sequence_rep(doc: dict, q: int, kind: str) -> FunctionRep:
    values = [_complex(x) for x in doc.get("values", [])]
    tail = doc.get("tail")
    if tail is not None and tail not in {k.value for k in TailKind}:
        raise DocumentError(f"unknown tail {tail!r}")
    extend = doc.get("extend", _default_extend(tail))
    try:
        if kind == "radial":
            f = Radial.from_values(q, values, extend)
        else:
            f = PathSupported.from_values(q, values, extend, float(doc.get("growth", 0.0)))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    derived = f.tail
    if tail is not None and tail != "unknown":
        declared = TailKind(tail)
        consistent = declared is derived.kind or (
            declared is TailKind.BOUNDED and derived.kind is TailKind.VANISHING
        )
        if not consistent:
            raise DocumentError(f"declared tail {tail!r} but the values imply {derived.kind.value!r}")
    if "bound" in doc:
        bound = float(doc["bound"])
        if derived.bound is None or derived.bound > bound * (1 + 1e-12):
            raise DocumentError(f"declared bound {bound} is violated (sup is {derived.bound})")
    return f


def function_from_document(doc, q: int | None = None) -> FunctionRep:
    """Build a representation from a parsed document; ``q`` fills in a missing ``"q"``."""
    if not isinstance(doc, dict):
        raise DocumentError("function document must be a JSON object")
    kind = doc.get("kind")
    doc_q = doc.get("q", q)
    if doc_q is None:
        raise DocumentError("missing branching parameter 'q'")
    if q is not None and doc_q != q:
        raise DocumentError(f"document has q={doc_q} but q={q} was requested")
    if isinstance(doc_q, bool) or not isinstance(doc_q, int) or doc_q < 1:
        raise DocumentError(f"q must be a positive integer, got {doc_q!r}")
    try:
        if kind == "finite":
            entries = {}
            for item in doc.get("entries", []):
                if not isinstance(item, (list, tuple)) or len(item) not in (3, 4):
                    raise DocumentError(f"entry must be [level, index, re, im], got {item!r}")
                level, index, re = item[0], item[1], item[2]
                im = item[3] if len(item) == 4 else 0.0
                if not all(isinstance(x, int) and not isinstance(x, bool) for x in (level, index)):
                    raise DocumentError(f"entry vertex must be integers, got {item!r}")
                entries[VertexId(level, index)] = _complex([re, im])
            return FiniteSupport(doc_q, entries)
        if kind in ("radial", "path"):
            return _sequence_rep(doc, doc_q, kind)
        if kind == "dense":
            levels = [[_complex(x) for x in row] for row in doc.get("levels", [])]
            return DenseTruncated(doc_q, tuple(levels))
    except DocumentError:
        raise
    except (ValueError, TypeError) as exc:
        raise DocumentError(str(exc)) from exc
    raise DocumentError(f"unknown function kind {kind!r}")


def loads_function(text: str, q: int | None = None) -> FunctionRep:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return function_from_document(doc, q)


def function_to_document(f: FunctionRep) -> dict:
    if isinstance(f, FiniteSupport):
        entries = [[v.level, v.index, x.real, x.imag] for v, x in sorted(f.entries.items())]
        return {"kind": "finite", "q": f.q, "entries": entries}
    if isinstance(f, DenseTruncated):
        return {"kind": "dense", "q": f.q, "levels": [[_pair(complex(x)) for x in row] for row in f.levels]}
    if isinstance(f, (Radial, PathSupported)):
        seq = f.seq
        if not seq.explicit:
            raise NotSerializable("a rule-based level sequence has no finite document")
        doc = {
            "kind": "radial" if isinstance(f, Radial) else "path",
            "q": f.q,
            "values": [_pair(z) for z in seq.values],
            "extend": seq.extend,
            "tail": seq.tail.kind.value,
        }
        if seq.tail.bound is not None:
            doc["bound"] = seq.tail.bound
        if isinstance(f, PathSupported):
            doc["growth"] = f.growth
        return doc
    raise NotSerializable(f"{type(f).__name__} cannot be serialized")


# -- deterministic output ------------------------------------------------------


def format_scalar(x) -> str:
    """Plain text for a number: 17 significant digits, ``inf``/``nan`` spelled out."""
    if isinstance(x, bool) or not isinstance(x, float):
        return str(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    text = format(x, ".17g")
    if not any(c in text for c in ".e"):
        text += ".0"
    return text


def _format_float(x: float) -> str:
    text = format_scalar(x)
    return f'"{text}"' if text in ("nan", "inf", "-inf") else text


def _encode(obj, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{json.dumps(str(k), ensure_ascii=False)}: {_encode(obj[k], indent, level + 1)}"
            for k in sorted(obj, key=str)
        ]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [_encode(x, indent, level + 1) for x in obj]
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return "[" + ", ".join(parts) + "]"
        return "[" + pad + ("," + pad).join(parts) + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return _encode(obj.item(), indent, level)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Canonical JSON: sorted keys, floats with 17 significant digits, inf as a string."""
    return _encode(obj, indent, 0)
