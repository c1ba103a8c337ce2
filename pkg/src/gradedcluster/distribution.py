from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping, Sequence

Degree = tuple[int, ...]


class DegreeDistribution:
    """Counts of variables per degree vector."""

    def __init__(self, counts: Mapping[Degree, int] | None = None):
        clean = {}
        for d, c in (counts or {}).items():
            if c < 0:
                raise ValueError(f"negative count {c} at degree {d}")
            if c:
                clean[tuple(d)] = int(c)
        self.counts: dict[Degree, int] = dict(sorted(clean.items()))

    @classmethod
    def from_degrees(cls, degrees: Iterable[Degree]) -> DegreeDistribution:
        return cls(Counter(tuple(d) for d in degrees))

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def dim(self) -> int | None:
        return len(next(iter(self.counts))) if self.counts else None

    def __getitem__(self, degree: Degree) -> int:
        return self.counts.get(tuple(degree), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DegreeDistribution):
            return NotImplemented
        return self.counts == other.counts

    def __repr__(self) -> str:
        return f"DegreeDistribution({self.counts})"

    def negated(self) -> DegreeDistribution:
        return DegreeDistribution({tuple(-x for x in d): c for d, c in self.counts.items()})

    def pushed(self, m: Sequence[Sequence[int]]) -> DegreeDistribution:
        """Image under the linear map ``d -> d @ m``."""
        out: Counter = Counter()
        width = len(m[0]) if m else 0
        for d, c in self.counts.items():
            out[tuple(sum(d[i] * m[i][j] for i in range(len(d))) for j in range(width))] += c
        return DegreeDistribution(out)

    def to_csv(self) -> str:
        lines = ["degree,count"]
        for d, c in self.counts.items():
            lines.append(f"\"[{','.join(map(str, d))}]\",{c}")
        return "\n".join(lines) + "\n"

    def format(self) -> str:
        def fmt(d: Degree) -> str:
            if len(d) == 1:
                return f"{d[0]:+d}" if d[0] else "0"
            return "(" + ",".join(map(str, d)) + ")"

        return "{" + ", ".join(f"{fmt(d)}: {c}" for d, c in self.counts.items()) + "}"


def is_balanced(dist: DegreeDistribution) -> bool:
    return all(dist[tuple(-x for x in d)] == c for d, c in dist.counts.items())
