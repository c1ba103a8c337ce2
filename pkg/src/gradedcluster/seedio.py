"""Seed JSON documents.

Schema::

    {"variables": ["x1", ...], "mutable": [1, 2, ...], "B": [[...], ...],
     "G": [[...], ...], "cluster": ["(1)*x1^1", ...]}

``mutable`` holds 1-based row numbers. ``cluster`` entries are Laurent
polynomials in the initial variables, in canonical text form. Unknown keys
are ignored on input.
"""

from __future__ import annotations

import json
from typing import Any

from .cluster import ExchangePattern, GradedSeed, SeedError, initial_cluster
from .laurent import LaurentPoly


def seed_to_dict(seed: GradedSeed) -> dict[str, Any]:
    r = seed.pattern.rows
    return {
        "variables": [f"x{i + 1}" for i in range(r)],
        "mutable": [i + 1 for i in seed.pattern.mutable],
        "B": [list(row) for row in seed.pattern.b],
        "G": [list(row) for row in seed.grading],
        "cluster": [p.to_str() for p in seed.cluster],
    }


def seed_from_dict(doc: dict[str, Any]) -> GradedSeed:
    try:
        b = doc["B"]
        r = len(b)
        mutable = doc.get("mutable")
        mutable = [int(i) - 1 for i in mutable] if mutable is not None else list(range(r))
        pattern = ExchangePattern(b, tuple(mutable))
        g = doc.get("G")
        if g is None:
            g = [[] for _ in range(r)]
        if "cluster" in doc:
            nvars = len(doc.get("variables") or b)
            cluster = tuple(LaurentPoly.parse(s, nvars) for s in doc["cluster"])
        else:
            cluster = initial_cluster(r)
        return GradedSeed(cluster, pattern, g)
    except (KeyError, TypeError) as exc:
        raise SeedError(f"malformed seed document: {exc}") from exc


def dumps(seed: GradedSeed, extra: dict[str, Any] | None = None) -> str:
    """One key per line, values on a single line."""
    doc = seed_to_dict(seed)
    if extra:
        doc.update(extra)
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items())
    return "{\n" + body + "\n}"


def loads(text: str) -> GradedSeed:
    try:
        return seed_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise SeedError(f"seed file is not valid JSON: {exc}") from exc
