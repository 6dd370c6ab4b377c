"""JSON documents for partitions, solution pairs, traces and oracle results.

Every document is an object with ``formatVersion`` (currently 1) and
``kind``. Geometry is integers only. The writer is canonical (sorted keys,
fixed layout), so write -> read -> write reproduces the same bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .core import Dims, Partition, PartitionPair, SolveTrace

FORMAT_VERSION = 1
KINDS = ("partition", "pair", "trace", "oracle")


class DocumentError(ValueError):
    """The document is not a well-formed SIRTP document."""


def _dump(value: Any, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dump(value[k], indent + 1)}" for k in sorted(value)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        items = [f"{inner}{_dump(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, separators=(", ", ": "))


def dumps(doc: dict) -> str:
    return _dump(doc) + "\n"


def _partition_payload(part: Partition) -> dict:
    return {
        "parent": [part.parent.width, part.parent.height],
        "modules": [list(m.as_tuple()) for m in part.modules],
    }


def _pair_payload(pair: PartitionPair) -> dict:
    return {
        "p": pair.p,
        "q": pair.q,
        "a": _partition_payload(pair.a),
        "b": _partition_payload(pair.b),
        "pairing": list(pair.pairing),
    }


def envelope(kind: str, payload: dict) -> dict:
    return {"formatVersion": FORMAT_VERSION, "kind": kind, **payload}


def pair_document(pair: PartitionPair) -> dict:
    return envelope("pair", _pair_payload(pair))


def partition_document(part: Partition) -> dict:
    return envelope("partition", _partition_payload(part))


def trace_document(trace: SolveTrace) -> dict:
    first = trace.rounds[0]
    return envelope("trace", {
        "p": first.p,
        "q": first.q,
        "size": trace.size,
        "depth": trace.depth,
        "rounds": [
            {"p": r.p, "q": r.q, "delta": r.delta, "branch": r.branch, "added": r.added}
            for r in trace.rounds
        ],
    })


def oracle_document(result) -> dict:
    return envelope("oracle", {
        "p": result.witness.p,
        "q": result.witness.q,
        "minSize": result.min_size,
        "exhausted": result.exhausted,
        "label": result.label,
        "witness": _pair_payload(result.witness),
    })


# ---------------------------------------------------------------------------
# reading


def _int(v: Any, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise DocumentError(f"{what} must be an integer, got {v!r}")
    return v


def _field(obj: dict, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where} must be an object")
    if key not in obj:
        raise DocumentError(f"{where} lacks {key!r}")
    return obj[key]


def _read_partition(obj: Any, where: str) -> Partition:
    parent = _field(obj, "parent", where)
    mods = _field(obj, "modules", where)
    if not isinstance(parent, list) or len(parent) != 2:
        raise DocumentError(f"{where}.parent must be [width, height]")
    if not isinstance(mods, list):
        raise DocumentError(f"{where}.modules must be a list")
    rects = []
    for i, m in enumerate(mods):
        if not isinstance(m, list) or len(m) != 4:
            raise DocumentError(f"{where}.modules[{i}] must be [x, y, w, h]")
        rects.append(tuple(_int(v, f"{where}.modules[{i}]") for v in m))
    try:
        return Partition.from_tuples(Dims(*(_int(v, f"{where}.parent") for v in parent)), rects)
    except (TypeError, ValueError) as e:
        raise DocumentError(f"{where}: {e}") from None


def _read_pair(obj: dict, where: str = "document") -> PartitionPair:
    a = _read_partition(_field(obj, "a", where), f"{where}.a")
    b = _read_partition(_field(obj, "b", where), f"{where}.b")
    pairing = _field(obj, "pairing", where)
    if not isinstance(pairing, list):
        raise DocumentError(f"{where}.pairing must be a list")
    pairing = tuple(_int(v, f"{where}.pairing") for v in pairing)
    if "p" in obj or "q" in obj:
        p, q = _int(_field(obj, "p", where), "p"), _int(_field(obj, "q", where), "q")
        if (p, q) != (a.parent.width, a.parent.height):
            raise DocumentError(f"{where}: p, q = {p}, {q} disagree with a.parent {a.parent}")
    return PartitionPair(a, b, pairing)


def loads(text: str) -> tuple[str, dict]:
    """Parse and check the envelope; returns (kind, raw document)."""
    if not text.strip():
        raise DocumentError("empty document")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    version = _field(doc, "formatVersion", "document")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported formatVersion {version!r}")
    kind = _field(doc, "kind", "document")
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}")
    return kind, doc


def read_pair(text: str) -> PartitionPair:
    """A solution pair from a ``pair`` document or an ``oracle`` witness."""
    kind, doc = loads(text)
    if kind == "pair":
        return _read_pair(doc)
    if kind == "oracle":
        return _read_pair(_field(doc, "witness", "document"), "witness")
    raise DocumentError(f"expected a pair document, got kind {kind!r}")


def read_partition(text: str) -> Partition:
    kind, doc = loads(text)
    if kind != "partition":
        raise DocumentError(f"expected a partition document, got kind {kind!r}")
    return _read_partition(doc, "document")
