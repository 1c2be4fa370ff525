"""Canonical JSON interchange for algebras and inner products.

Documents use 1-based indices and exact rational strings ("3", "-1/2").
Serialization is canonical: sorted keys, two-space indent, brackets
ordered by (i, j, k), trailing newline.  Floats are rejected on input so
a document round-trips byte for byte.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .errors import DocumentError
from .lie import LieAlgebra
from .metric import InnerProduct, MetricLieAlgebra

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(value, where: str = "value") -> Fraction:
    """Strict rational-string parsing shared by documents, service, CLI."""
    return _parse_rational(value, where)


def _parse_rational(value, where: str) -> Fraction:
    if not isinstance(value, str):
        raise DocumentError(f"{where}: rational values must be strings, "
                            f"got {type(value).__name__}")
    if not _RATIONAL.match(value):
        raise DocumentError(f"{where}: {value!r} is not an integer or "
                            "fraction string")
    try:
        return Fraction(value)
    except ZeroDivisionError:
        raise DocumentError(f"{where}: zero denominator in {value!r}") from None


def _format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def to_document(obj: Union[LieAlgebra, MetricLieAlgebra]) -> dict:
    if isinstance(obj, MetricLieAlgebra):
        alg, inner = obj.algebra, obj.metric
    else:
        alg, inner = obj, None
    n = alg.dim
    brackets: List[dict] = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                v = alg.c[i][j][k]
                if v:
                    brackets.append({"i": i + 1, "j": j + 1, "k": k + 1,
                                     "value": _format_rational(v)})
    doc: dict = {"dim": n, "brackets": brackets}
    if inner is not None:
        doc["gram"] = [[_format_rational(v) for v in row]
                       for row in inner.gram]
    if alg.labels is not None:
        doc["labels"] = list(alg.labels)
    return doc


_ALLOWED_KEYS = {"dim", "brackets", "gram", "labels"}


def from_document(doc: dict) -> Tuple[LieAlgebra, Optional[InnerProduct]]:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    unknown = set(doc) - _ALLOWED_KEYS
    if unknown:
        raise DocumentError(f"unknown keys: {', '.join(sorted(unknown))}")
    if "dim" not in doc:
        raise DocumentError("missing key 'dim'")
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError("'dim' must be a positive integer")

    entries = doc.get("brackets", [])
    if not isinstance(entries, list):
        raise DocumentError("'brackets' must be a list")
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    seen = set()
    for pos, entry in enumerate(entries):
        where = f"brackets[{pos}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: must be an object")
        if set(entry) != {"i", "j", "k", "value"}:
            raise DocumentError(f"{where}: needs exactly i, j, k, value")
        i, j, k = entry["i"], entry["j"], entry["k"]
        for name, idx in (("i", i), ("j", j), ("k", k)):
            if not isinstance(idx, int) or isinstance(idx, bool) \
                    or not 1 <= idx <= n:
                raise DocumentError(f"{where}: {name} must be an integer "
                                    f"in 1..{n}")
        if not i < j:
            raise DocumentError(f"{where}: requires i < j (got {i}, {j})")
        if (i, j, k) in seen:
            raise DocumentError(f"{where}: duplicate entry ({i},{j},{k})")
        seen.add((i, j, k))
        v = _parse_rational(entry["value"], where)
        if v == 0:
            raise DocumentError(f"{where}: zero values are omitted, not "
                                "written")
        table.setdefault((i - 1, j - 1), {})[k - 1] = v

    labels = None
    if "labels" in doc:
        raw = doc["labels"]
        if not isinstance(raw, list) or len(raw) != n \
                or not all(isinstance(s, str) for s in raw):
            raise DocumentError(f"'labels' must be a list of {n} strings")
        labels = tuple(raw)

    alg = LieAlgebra.from_brackets(n, table, labels=labels)

    inner = None
    if "gram" in doc:
        rows = doc["gram"]
        if not isinstance(rows, list) or len(rows) != n or \
                any(not isinstance(r, list) or len(r) != n for r in rows):
            raise DocumentError(f"'gram' must be {n} rows of {n} entries")
        gram = [[_parse_rational(v, f"gram[{i}][{j}]")
                 for j, v in enumerate(row)] for i, row in enumerate(rows)]
        inner = InnerProduct.from_rows(gram)
    return alg, inner


def dumps(doc: dict) -> str:
    """Canonical serialization with a trailing newline."""
    prepared = dict(doc)
    if "brackets" in prepared:
        prepared["brackets"] = sorted(
            prepared["brackets"], key=lambda e: (e["i"], e["j"], e["k"]))
    return json.dumps(prepared, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return doc
