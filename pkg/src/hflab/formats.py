"""Bit-exact JSON document format for hyperfield tables.

A document stores the carrier in order, the distinguished elements, the
negation map, and the multiplication/addition tables keyed "a|b" with a
before b in element order (one key per unordered pair, so commutativity is
structural).  Serialization is canonical: sorted object keys, addition
arrays sorted by element order, UTF-8, two-space indent, trailing newline.
parse(serialize(h)) reproduces h and re-serializes byte-for-byte.
"""

from __future__ import annotations

import json
import os

from .core import Hyperfield
from .errors import MalformedTableError, SizeBoundExceededError

FORMAT_VERSION = "1"
DEFAULT_MAX_ELEMENTS = 257


def max_elements() -> int:
    raw = os.environ.get("HFLAB_MAX_ELEMENTS")
    if not raw:
        return DEFAULT_MAX_ELEMENTS
    try:
        return int(raw)
    except ValueError:
        raise MalformedTableError(
            f"HFLAB_MAX_ELEMENTS is not an integer: {raw!r}")


def document_of(h: Hyperfield) -> dict:
    """Plain-dict document; requires symmetric tables."""
    n = h.n
    for lab in h.elements:
        if "|" in lab:
            raise MalformedTableError(f"label {lab!r} contains the key separator")
    for i in range(n):
        for j in range(i, n):
            if (h.add_mask(i, j) != h.add_mask(j, i)
                    or h.mul_i(i, j) != h.mul_i(j, i)):
                raise MalformedTableError("cannot canonicalize an asymmetric table")
    mul = {}
    add = {}
    for i in range(n):
        for j in range(i, n):
            key = f"{h.elements[i]}|{h.elements[j]}"
            mul[key] = h.label(h.mul_i(i, j))
            add[key] = list(h.mask_labels(h.add_mask(i, j)))
    return {
        "format_version": FORMAT_VERSION,
        "elements": list(h.elements),
        "zero": h.zero,
        "one": h.one,
        "neg": {a: h.neg_of(a) for a in h.elements},
        "mul": mul,
        "add": add,
        "metadata": dict(h.metadata),
    }


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize(h: Hyperfield) -> str:
    return canonical_json(document_of(h))


def _split_key(key, index):
    parts = key.split("|")
    if len(parts) != 2:
        raise MalformedTableError(f"bad table key {key!r}")
    a, b = parts
    if a not in index or b not in index:
        raise MalformedTableError(f"table key {key!r} names unknown elements")
    if index[a] > index[b]:
        raise MalformedTableError(
            f"table key {key!r} is not in canonical (a before b) order")
    return a, b


def parse_document(doc: dict) -> Hyperfield:
    if not isinstance(doc, dict):
        raise MalformedTableError("document is not a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise MalformedTableError(
            f"unsupported format_version {doc.get('format_version')!r}")
    for field in ("elements", "zero", "one", "neg", "mul", "add"):
        if field not in doc:
            raise MalformedTableError(f"document misses {field!r}")
    elements = doc["elements"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise MalformedTableError("elements must be a list of strings")
    bound = max_elements()
    if len(elements) > bound:
        raise SizeBoundExceededError(
            f"{len(elements)} elements exceed the safety bound {bound} "
            "(override with HFLAB_MAX_ELEMENTS)")
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise MalformedTableError("duplicate element labels")
    for lab in elements:
        if "|" in lab:
            raise MalformedTableError(f"label {lab!r} contains the key separator")
    mul = {}
    for key, val in doc["mul"].items():
        mul[_split_key(key, index)] = val
    add = {}
    for key, val in doc["add"].items():
        if not isinstance(val, list):
            raise MalformedTableError(f"add[{key!r}] is not an array")
        add[_split_key(key, index)] = val
    return Hyperfield.from_tables(elements, doc["zero"], doc["one"],
                                  doc["neg"], mul, add,
                                  metadata=doc.get("metadata") or {})


def parse(text: str) -> Hyperfield:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedTableError(f"invalid JSON: {e}") from e
    return parse_document(doc)
