"""Combinatorial models for type A: polygon diagonals and the repetition
quiver ZA_n, with the exact-frieze checks run on them.

Conventions
-----------
The polygon has ``N = n + 3`` vertices ``0 .. N-1``. A vertex ``(p, q)`` of
ZA_n (``1 <= q <= n``) carries the arrows ``(p, q) -> (p, q+1)`` and
``(p, q) -> (p+1, q-1)``; translation is ``tau(p, q) = (p-1, q)`` and the
shift is ``(p, q) -> (p+q, n+1-q)``. Vertex ``(p, q)`` corresponds to the
diagonal ``{p, p+q+1} mod N``, under which tau is rotation by one vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .cluster import Degree, GradedSeed, degree, mutate_seed
from .laurent import LaurentPoly
from .roots import DynkinType, bipartite_seed


class FlipDesync(AssertionError):
    """Flip graph and exchange graph disagree."""


@dataclass(frozen=True, order=True)
class Diagonal:
    i: int
    j: int

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError(f"diagonal endpoints must satisfy i < j, got ({self.i}, {self.j})")

    @classmethod
    def of(cls, a: int, b: int, n_gon: int) -> Diagonal:
        a, b = a % n_gon, b % n_gon
        if a == b or (a - b) % n_gon in (1, n_gon - 1):
            raise ValueError(f"{{{a}, {b}}} is not a diagonal of the {n_gon}-gon")
        return cls(min(a, b), max(a, b))

    def rotated(self, n_gon: int, steps: int = 1) -> Diagonal:
        return Diagonal.of(self.i + steps, self.j + steps, n_gon)


@dataclass(frozen=True, order=True)
class StripVertex:
    p: int
    q: int


@dataclass
class FriezeAssignment:
    n: int
    values: dict = field(default_factory=dict)
    polys: dict = field(default_factory=dict)

    @property
    def n_gon(self) -> int:
        return self.n + 3

    def __getitem__(self, key):
        return self.values[key]


@dataclass
class CheckReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    witness: tuple | None = None
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "CONSISTENT" if self.ok else "INCONSISTENT"


def _add(a: Degree, b: Degree) -> Degree:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Degree, b: Degree) -> Degree:
    return tuple(x - y for x, y in zip(a, b))


def _neg(a: Degree) -> Degree:
    return tuple(-x for x in a)


def diagonals(n_gon: int) -> list[Diagonal]:
    if n_gon < 4:
        raise ValueError("a polygon needs at least 4 vertices to have diagonals")
    return [Diagonal(i, j) for i in range(n_gon) for j in range(i + 2, n_gon) if not (i == 0 and j == n_gon - 1)]


def _is_diagonal(a: int, b: int, n_gon: int) -> bool:
    return (a - b) % n_gon not in (0, 1, n_gon - 1)


def _edge(a: int, b: int, n_gon: int) -> tuple[int, int]:
    a, b = a % n_gon, b % n_gon
    return (min(a, b), max(a, b))


def section_positions(n: int, p_lo: int = 0) -> list[StripVertex]:
    """The bipartite zig-zag section of ZA_n, leftmost vertex in column ``p_lo``.

    Odd heights are sources, matching the bipartite seed of type A.
    """
    top = (n - 1) // 2
    return [StripVertex(p_lo + top - (q - 1) // 2, q) for q in range(1, n + 1)]


def vertex_diagonal(v: StripVertex, n: int) -> Diagonal:
    return Diagonal.of(v.p, v.p + v.q + 1, n + 3)


def initial_triangulation(n: int) -> list[Diagonal]:
    """Diagonals of the section; position ``i`` matches initial variable ``i``."""
    return [vertex_diagonal(v, n) for v in section_positions(n)]


def _triangle_apexes(d: Diagonal, edges: set[tuple[int, int]], n_gon: int) -> list[int]:
    return [v for v in range(n_gon) if v not in (d.i, d.j)
            and _edge(d.i, v, n_gon) in edges and _edge(v, d.j, n_gon) in edges]


def _triangulation_adjacency(tri: Sequence[Diagonal], n_gon: int) -> set[tuple[int, int]]:
    edges = {_edge(v, v + 1, n_gon) for v in range(n_gon)} | {(d.i, d.j) for d in tri}
    adj = set()
    for a, da in enumerate(tri):
        for b, db in enumerate(tri):
            if a < b:
                shared = {da.i, da.j} & {db.i, db.j}
                if len(shared) == 1:
                    (v,) = shared
                    x = da.i + da.j - v
                    y = db.i + db.j - v
                    if _edge(x, y, n_gon) in edges:
                        adj.add((a, b))
    return adj


def flip(tri: Sequence[Diagonal], pos: int, n_gon: int) -> Diagonal:
    edges = {_edge(v, v + 1, n_gon) for v in range(n_gon)} | {(d.i, d.j) for d in tri}
    apexes = _triangle_apexes(tri[pos], edges, n_gon)
    if len(apexes) != 2:
        raise FlipDesync(f"diagonal {tri[pos]} does not bound exactly two triangles")
    return Diagonal.of(apexes[0], apexes[1], n_gon)


def label_diagonals(n: int, seed: GradedSeed | None = None) -> FriezeAssignment:
    """Label every diagonal of the (n+3)-gon with its cluster variable's degree.

    Flips of the triangulation are mirrored by mutations of ``seed`` (default:
    the bipartite type A_n seed with its standard grading). Any disagreement
    between the two graphs raises FlipDesync.
    """
    t = DynkinType("A", n)
    if seed is None:
        seed = bipartite_seed(t)
    if seed.rank != n or seed.pattern.rows != n:
        raise ValueError(f"seed is not of rank {n} without coefficients")
    n_gon = n + 3
    g0 = seed.grading
    tri0 = tuple(initial_triangulation(n))
    out = FriezeAssignment(n)

    def check_shape(tri, s: GradedSeed):
        adj = _triangulation_adjacency(tri, n_gon)
        b = s.pattern.b
        for a in range(n):
            for c in range(n):
                if a < c and ((a, c) in adj) != (b[a][c] != 0):
                    raise FlipDesync(f"triangulation {tri} does not match exchange matrix at ({a}, {c})")

    def assign(d: Diagonal, p: LaurentPoly, row: Degree):
        if degree(p, g0) != row:
            raise FlipDesync(f"{d}: grading row {row} disagrees with the Laurent degree")
        known = out.polys.get(d)
        if known is None:
            out.polys[d] = p
            out.values[d] = row
        elif known != p:
            raise FlipDesync(f"{d} reached with two different cluster variables")

    check_shape(tri0, seed)
    for d, p, row in zip(tri0, seed.cluster, seed.grading):
        assign(d, p, row)
    seen = {frozenset(tri0)}
    queue = deque([(tri0, seed)])
    while queue:
        tri, s = queue.popleft()
        for pos in range(n):
            new_d = flip(tri, pos, n_gon)
            s2 = mutate_seed(s, pos)
            tri2 = tri[:pos] + (new_d,) + tri[pos + 1:]
            assign(new_d, s2.cluster[pos], s2.grading[pos])
            key = frozenset(tri2)
            if key not in seen:
                check_shape(tri2, s2)
                seen.add(key)
                queue.append((tri2, s2))
    if len(out.values) != n * n_gon // 2:
        raise FlipDesync(f"labelled {len(out.values)} diagonals, expected {n * n_gon // 2}")
    out.polys = dict(sorted(out.polys.items()))
    out.values = dict(sorted(out.values.items()))
    return out


def _polygon_value(assignment: FriezeAssignment, a: int, b: int) -> Degree:
    n_gon = assignment.n_gon
    if _is_diagonal(a, b, n_gon):
        return assignment.values[Diagonal.of(a, b, n_gon)]
    d = len(next(iter(assignment.values.values())))
    return (0,) * d


def check_polygon_mesh(assignment: FriezeAssignment) -> CheckReport:
    """deg(i-1, j-1) + deg(i, j) == deg(i-1, j) + deg(i, j-1), boundary edges read as 0."""
    violations = []
    for dg in assignment.values:
        i, j = dg.i, dg.j
        lhs = _add(_polygon_value(assignment, i - 1, j - 1), assignment.values[dg])
        rhs = _add(_polygon_value(assignment, i - 1, j), _polygon_value(assignment, i, j - 1))
        if lhs != rhs:
            violations.append(f"mesh ending at {dg}: {lhs} != {rhs}")
    return CheckReport(not violations, violations)


def check_sigma_sign_flip(assignment: FriezeAssignment, n_gon: int | None = None) -> CheckReport:
    """deg(rho d) == -deg(d), and degree 0 on diagonals with an odd rotation orbit."""
    n_gon = n_gon or assignment.n_gon
    violations = []
    forced = []
    for d, v in assignment.values.items():
        r = d.rotated(n_gon)
        if assignment.values[r] != _neg(v):
            violations.append(f"{d} has degree {v} but its rotation {r} has {assignment.values[r]}")
        orbit = next(m for m in range(1, n_gon + 1) if d.rotated(n_gon, m) == d)
        if orbit % 2:
            forced.append(d)
            if any(v):
                violations.append(f"{d} has odd rotation orbit {orbit} but nonzero degree {v}")
    return CheckReport(not violations, violations, details={"forced_zero": forced})


def knit_strip(
    n: int,
    initial_slice: Sequence[Sequence[int]],
    window: tuple[int, int] | None = None,
    section: str = "bipartite",
    max_width: int | None = None,
) -> FriezeAssignment:
    """Propagate slice values across ZA_n by f(x) + f(tau x) = sum of f over arrows into x.

    ``initial_slice[q-1]`` is placed at height ``q`` of the section starting in
    the window's left column: the bipartite zig-zag (default) or the vertical
    column ``p = window[0]``.
    """
    if len(initial_slice) != n:
        raise ValueError(f"slice must have {n} values, got {len(initial_slice)}")
    width_bound = max_width if max_width is not None else 6 * (n + 3)
    if window is None:
        window = (0, width_bound - 1)
    p_lo, p_hi = window
    if p_hi - p_lo + 1 > width_bound:
        raise ValueError(f"window of width {p_hi - p_lo + 1} exceeds the bound {width_bound}")
    slice_vals = [tuple(int(x) for x in (v if isinstance(v, (tuple, list)) else (v,))) for v in initial_slice]
    dim = len(slice_vals[0])
    zero = (0,) * dim
    if section == "bipartite":
        starts = section_positions(n, p_lo)
    elif section == "column":
        starts = [StripVertex(p_lo, q) for q in range(1, n + 1)]
    else:
        raise ValueError(f"unknown section {section!r}")

    f: dict[tuple[int, int], Degree] = {(v.p, v.q): val for v, val in zip(starts, slice_vals)}

    def get(p: int, q: int) -> Degree | None:
        if q == 0 or q == n + 1:
            return zero
        return f.get((p, q))

    lo, hi = p_lo - n - 1, p_hi + n + 1
    changed = True
    while changed:
        changed = False
        for p in range(lo, hi + 1):
            for q in range(1, n + 1):
                # mesh ending at (p, q): f(p,q) + f(p-1,q) = f(p,q-1) + f(p-1,q+1)
                cur, prev = get(p, q), get(p - 1, q)
                a, b = get(p, q - 1), get(p - 1, q + 1)
                if a is None or b is None:
                    continue
                if cur is None and prev is not None:
                    f[(p, q)] = _sub(_add(a, b), prev)
                    changed = True
                elif prev is None and cur is not None and p - 1 >= lo:
                    f[(p - 1, q)] = _sub(_add(a, b), cur)
                    changed = True
    out = FriezeAssignment(n)
    for p in range(p_lo, p_hi + 1):
        for q in range(1, n + 1):
            if (p, q) not in f:
                raise ValueError(f"knitting left ({p}, {q}) undetermined")
            out.values[StripVertex(p, q)] = f[(p, q)]
    return out


def check_strip_mesh(strip: FriezeAssignment) -> CheckReport:
    n = strip.n
    vals = strip.values
    violations = []
    for v in vals:
        prev = StripVertex(v.p - 1, v.q)
        if prev not in vals:
            continue
        zero = (0,) * len(vals[v])
        a = vals.get(StripVertex(v.p, v.q - 1), zero) if v.q > 1 else zero
        b_key = StripVertex(v.p - 1, v.q + 1)
        if v.q < n and b_key not in vals:
            continue
        b = vals[b_key] if v.q < n else zero
        if _add(vals[v], vals[prev]) != _add(a, b):
            violations.append(f"mesh ending at {v}")
    return CheckReport(not violations, violations)


def shift(v: StripVertex, n: int) -> StripVertex:
    return StripVertex(v.p + v.q, n + 1 - v.q)


def identification(v: StripVertex, n: int) -> StripVertex:
    """tau^-1 composed with the shift: vertices identified in the cluster category."""
    return StripVertex(v.p + v.q + 1, n + 1 - v.q)


def check_shift_negation(strip: FriezeAssignment) -> CheckReport:
    """Values at shifted vertices are negated."""
    violations = []
    for v, val in strip.values.items():
        w = shift(v, strip.n)
        if w in strip.values and strip.values[w] != _neg(val):
            violations.append(f"{v}={val} but shift {w}={strip.values[w]}")
    return CheckReport(not violations, violations)


def check_descent(n: int, strip: FriezeAssignment) -> CheckReport:
    """Does the strip frieze descend to the cluster category?

    Compares every vertex with its image under the identifying functor; the
    first differing pair is reported as the witness.
    """
    violations = []
    witness = None
    pairs = 0
    for v, val in strip.values.items():
        w = identification(v, n)
        if w in strip.values:
            pairs += 1
            if strip.values[w] != val:
                violations.append(f"{v}={val} but identified {w}={strip.values[w]}")
                if witness is None:
                    witness = ((v, val), (w, strip.values[w]))
    return CheckReport(not violations, violations, witness, {"pairs": pairs})


def compare_strip_with_polygon(strip: FriezeAssignment, assignment: FriezeAssignment) -> CheckReport:
    violations = []
    for v, val in strip.values.items():
        d = vertex_diagonal(v, strip.n)
        if assignment.values[d] != val:
            violations.append(f"{v} -> {d}: strip {val}, polygon {assignment.values[d]}")
    return CheckReport(not violations, violations)


def fundamental_domain(n: int) -> list[StripVertex]:
    """One vertex of ZA_n per diagonal: those with ``1 <= 2p + q <= n + 3``."""
    out = []
    for q in range(1, n + 1):
        for p in range(-n, n + 3):
            if 1 <= 2 * p + q <= n + 3:
                out.append(StripVertex(p, q))
    return out


def polygon_as_strip(assignment: FriezeAssignment) -> dict[StripVertex, Degree]:
    return {v: assignment.values[vertex_diagonal(v, assignment.n)] for v in fundamental_domain(assignment.n)}
