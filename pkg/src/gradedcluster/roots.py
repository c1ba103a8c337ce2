"""Finite-type data: Cartan matrices, bipartite seeds, positive roots and the
published degree distributions they are checked against."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import zlinalg
from .cluster import Degree, ExchangePattern, GradedSeed, Matrix, standard_grading
from .distribution import DegreeDistribution


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    n: int

    def __post_init__(self):
        f, n = self.family, self.n
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(f)
        if not ok:
            raise ValueError(f"invalid Dynkin type {f}{n}")

    @classmethod
    def parse(cls, text: str) -> DynkinType:
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if m is None:
            raise ValueError(f"cannot parse Dynkin type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.n}"


def _edges(t: DynkinType) -> list[tuple[int, int]]:
    n = t.n
    if t.family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if t.family == "E":
        # Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4
        chain = [0] + list(range(2, n))
        return [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)] + [(1, 3)]
    return [(i, i + 1) for i in range(n - 1)]


def cartan_matrix(t: DynkinType) -> list[list[int]]:
    n = t.n
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _edges(t):
        a[i][j] = a[j][i] = -1
    if t.family == "B":
        a[n - 1][n - 2] = -2
    elif t.family == "C":
        a[n - 2][n - 1] = -2
    elif t.family == "F":
        a[1][2] = -2
    elif t.family == "G":
        a[1][0] = -3
    return a


def _sides(t: DynkinType) -> list[int]:
    """+1 for vertices at even distance from vertex 1 (the sources), else -1."""
    adj: dict[int, list[int]] = {i: [] for i in range(t.n)}
    for i, j in _edges(t):
        adj[i].append(j)
        adj[j].append(i)
    side = [0] * t.n
    side[0] = 1
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            if not side[j]:
                side[j] = -side[i]
                queue.append(j)
    return side


def bipartite_matrix(t: DynkinType) -> list[list[int]]:
    """Bipartite exchange matrix with Cartan companion ``cartan_matrix(t)``.

    Rows of source vertices are nonnegative, rows of sinks nonpositive.
    """
    a = cartan_matrix(t)
    side = _sides(t)
    return [[0 if i == j else side[i] * -a[i][j] for j in range(t.n)] for i in range(t.n)]


def bipartite_seed(t: DynkinType) -> GradedSeed:
    pattern = ExchangePattern.square(bipartite_matrix(t))
    return GradedSeed.initial(pattern, standard_grading(pattern))


def cartan_companion(b: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[2 if i == j else -abs(x) for j, x in enumerate(row)] for i, row in enumerate(b)]


@dataclass(frozen=True, order=True)
class Root:
    """Coefficients over the simple roots; either positive or a negative simple root."""

    coeffs: tuple[int, ...]

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs) and any(self.coeffs)

    @property
    def is_negative_simple(self) -> bool:
        return sorted(self.coeffs)[:1] == [-1] and sum(abs(c) for c in self.coeffs) == 1

    @classmethod
    def negative_simple(cls, n: int, i: int) -> Root:
        return cls(tuple(-1 if j == i else 0 for j in range(n)))


def reflect(coeffs: Sequence[int], i: int, cartan: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Simple reflection ``s_i(alpha_j) = alpha_j - a_ij alpha_i`` extended linearly."""
    pairing = sum(cartan[i][j] * c for j, c in enumerate(coeffs))
    out = list(coeffs)
    out[i] -= pairing
    return tuple(out)


def positive_roots(t: DynkinType | Sequence[Sequence[int]]) -> list[Root]:
    """Positive roots by closure of the simple roots under simple reflections."""
    cartan = cartan_matrix(t) if isinstance(t, DynkinType) else [list(r) for r in t]
    n = len(cartan)
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simples)
    queue = deque(simples)
    while queue:
        alpha = queue.popleft()
        for i in range(n):
            beta = reflect(alpha, i, cartan)
            if beta in seen or not any(beta):
                continue
            if all(c >= 0 for c in beta):
                seen.add(beta)
                queue.append(beta)
            elif any(c > 0 for c in beta):
                raise ValueError("mixed-sign root: Cartan matrix is not of finite type")
    return [Root(c) for c in sorted(seen, key=lambda c: (sum(c), tuple(-x for x in c)))]


def almost_positive_roots(t: DynkinType) -> list[Root]:
    return [Root.negative_simple(t.n, i) for i in range(t.n)] + positive_roots(t)


_POSITIVE_COUNT = {"E": {6: 36, 7: 63, 8: 120}, "F": {4: 24}, "G": {2: 6}}


def classical_positive_count(t: DynkinType) -> int:
    n = t.n
    if t.family == "A":
        return n * (n + 1) // 2
    if t.family in "BC":
        return n * n
    if t.family == "D":
        return n * (n - 1)
    return _POSITIVE_COUNT[t.family][n]


def degree_of_root(alpha: Root, grading: Sequence[Sequence[int]]) -> Degree:
    """``-alpha G``; for a negative simple root this is the grading row itself."""
    if len(grading) != len(alpha.coeffs):
        raise ValueError(f"grading has {len(grading)} rows but the root has rank {len(alpha.coeffs)}")
    d = len(grading[0]) if grading else 0
    if d == 0:
        return ()
    return tuple(-x for x in zlinalg.vecmat(alpha.coeffs, grading))


def has_zero_grading_only(t: DynkinType) -> bool:
    return zlinalg.rank(bipartite_matrix(t)) == t.n


def _claim(counts: dict[Degree, Fraction | int]) -> DegreeDistribution:
    out = {}
    for d, c in counts.items():
        c = Fraction(c)
        if c.denominator != 1:
            raise ValueError(f"published formula gives a non-integer count {c}")
        out[d] = int(c)
    return DegreeDistribution(out)


def closed_form_distribution(t: DynkinType) -> DegreeDistribution:
    """The published degree counts for the bipartite seed's grading.

    These are claims to be checked by enumeration. For zero-grading types the
    whole mass sits at the empty degree vector.
    """
    n = t.n
    F = Fraction
    total = classical_positive_count(t) + n
    if has_zero_grading_only(t):
        return DegreeDistribution({(): total})
    if t.family == "A" and n % 2:
        return _claim({(1,): F((n + 1) * (n + 3), 8), (0,): F((n - 1) * (n + 3), 4),
                       (-1,): F((n + 1) * (n + 3), 8)})
    if t.family == "B" and n % 2:
        q = F((n + 1) * (n - 1), 4)
        h = F(n + 1, 2)
        return _claim({(2,): q, (1,): h, (0,): q, (-1,): h, (-2,): q})
    if t.family == "C" and n % 2:
        s = F(n + 1, 2) ** 2
        return _claim({(1,): s, (0,): F((n + 1) * (n - 1), 2), (-1,): s})
    if t.family == "D":
        if n % 2:
            return _claim({(1,): n, (0,): n * (n - 2), (-1,): n})
        quarter, half = F(n * n - 2 * n, 4), F(n, 2)
        table = {
            (-1, 0): quarter, (-1, 1): half,
            (0, -1): half, (0, 0): F(n * n - 2 * n, 2), (0, 1): half,
            (1, -1): half, (1, 0): quarter,
        }
        return _claim(table)
    if t.family == "E" and n == 7:
        return _claim({(1,): 15, (0,): 40, (-1,): 15})
    raise ValueError(f"no published distribution for {t}")


def published_grading(t: DynkinType) -> Matrix | None:
    """Kernel vectors exactly as the published formulas state them.

    Returned as printed; callers must check the grading condition, which the
    formulas for B and C fail when ``n = 3 (mod 4)``.
    """
    n = t.n
    rows: list[tuple[int, ...]] = []
    if t.family == "A" and n % 2:
        rows = [({1: 1, 3: -1}.get(i % 4, 0),) for i in range(1, n + 1)]
    elif t.family in "BC" and n % 2:
        big = 2 if t.family == "B" else 1
        for i in range(1, n + 1):
            if i == n:
                rows.append((1,))
            else:
                rows.append(({1: big, 3: -big}.get(i % 4, 0),))
    elif t.family == "D" and n % 2:
        rows = [(0,)] * (n - 2) + [(1,), (-1,)]
    elif t.family == "D":
        head = [{1: (1, 0), 3: (-1, 0)}.get(i % 4, (0, 0)) for i in range(1, n - 1)]
        tail = [(-1, 1), (0, -1)] if n % 4 == 0 else [(1, -1), (0, 1)]
        rows = head + tail
    else:
        return None
    return tuple(rows)


def published_kernel_dimension(t: DynkinType) -> int:
    """Rank of the grading lattice as stated for each family."""
    n = t.n
    if t.family in "ABC":
        return n % 2
    if t.family == "D":
        return 1 if n % 2 else 2
    return 1 if (t.family, n) == ("E", 7) else 0


def root_distribution(t: DynkinType, grading: Sequence[Sequence[int]]) -> DegreeDistribution:
    """Degrees ``-alpha G`` over the almost positive roots."""
    return DegreeDistribution.from_degrees(degree_of_root(a, grading) for a in almost_positive_roots(t))
