"""Breadth-first enumeration of exchange graphs, and the checks run on them.

Seeds are deduplicated as unordered clusters. Exchange quotients are memoised
on (old variable, exchange binomial), so each distinct exchange is divided
out once; with ``workers > 1`` the divisions of a BFS level are farmed out
to a process pool and merged back in canonical order, so results do not
depend on the worker count.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import zlinalg
from .cluster import (
    Degree,
    GradedSeed,
    Matrix,
    degree,
    exchange,
    initial_cluster,
    mutate_matrix,
    mutate_grading_rows,
)
from .distribution import DegreeDistribution, is_balanced
from .laurent import LaurentPoly
from .roots import DynkinType, Root, degree_of_root, positive_roots

SeedKey = tuple[str, ...]
Factors = tuple[tuple[int, int], ...]

CACHE_FORMAT = 1


class EnumerationLimitExceeded(RuntimeError):
    def __init__(self, kind: str, limit: int):
        super().__init__(f"{kind} limit {limit} exceeded before the exchange graph closed")
        self.kind = kind
        self.limit = limit


class DegreeMismatch(AssertionError):
    """Grading-row degree and polynomial degree of a variable disagree."""


@dataclass(frozen=True)
class Limits:
    max_seeds: int = 10**6
    max_variables: int = 10**4

    def __post_init__(self):
        if self.max_seeds <= 0 or self.max_variables <= 0:
            raise ValueError("limits must be positive")


@dataclass(frozen=True, order=True)
class Edge:
    """Mutation ``source --k--> target``; variables are indices into ``EnumerationResult.polys``."""

    source: int
    direction: int
    target: int
    old: int
    new: int
    plus: Factors
    minus: Factors


@dataclass
class EnumerationResult:
    nvars: int
    polys: list[LaurentPoly]
    degrees: list[Degree]
    frozen: frozenset[int]
    clusters: list[tuple[int, ...]]
    edges: list[Edge] = field(default_factory=list)

    @property
    def variables(self) -> dict[LaurentPoly, Degree]:
        return dict(zip(self.polys, self.degrees))

    @property
    def cluster_count(self) -> int:
        return len(self.clusters)

    def mutable_indices(self) -> list[int]:
        return [i for i in range(len(self.polys)) if i not in self.frozen]

    @property
    def mutable_variables(self) -> list[LaurentPoly]:
        return [self.polys[i] for i in self.mutable_indices()]

    def degree_of(self, p: LaurentPoly) -> Degree:
        return self.degrees[self.polys.index(p)]

    def seed_key(self, cluster: int) -> SeedKey:
        return tuple(sorted(self.polys[i].to_str() for i in self.clusters[cluster]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EnumerationResult):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.polys == other.polys
            and self.degrees == other.degrees
            and self.frozen == other.frozen
            and self.clusters == other.clusters
            and sorted(self.edges) == sorted(other.edges)
        )

    # -- serialisation -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "format": CACHE_FORMAT,
            "nvars": self.nvars,
            "variables": [
                {"laurent": p.to_str(), "degree": list(d), "frozen": i in self.frozen}
                for i, (p, d) in enumerate(zip(self.polys, self.degrees))
            ],
            "clusters": [list(c) for c in self.clusters],
            "edges": [
                [e.source, e.direction, e.target, e.old, e.new,
                 [list(f) for f in e.plus], [list(f) for f in e.minus]]
                for e in self.edges
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> EnumerationResult:
        if doc.get("format") != CACHE_FORMAT:
            raise ValueError(f"unsupported result format {doc.get('format')!r}")
        nvars = doc["nvars"]
        variables = doc["variables"]
        return cls(
            nvars=nvars,
            polys=[LaurentPoly.parse(v["laurent"], nvars) for v in variables],
            degrees=[tuple(v["degree"]) for v in variables],
            frozen=frozenset(i for i, v in enumerate(variables) if v["frozen"]),
            clusters=[tuple(c) for c in doc["clusters"]],
            edges=[
                Edge(s, k, t, o, n, tuple(tuple(f) for f in p), tuple(tuple(f) for f in m))
                for s, k, t, o, n, p, m in doc["edges"]
            ],
        )


def _product(polys: Sequence[LaurentPoly], factors: Factors, nvars: int) -> LaurentPoly:
    out = LaurentPoly.constant(nvars)
    for i, e in factors:
        out = out * polys[i] ** e
    return out


def _divide_job(job: tuple[LaurentPoly, list[tuple[LaurentPoly, int]], list[tuple[LaurentPoly, int]]]) -> LaurentPoly:
    xk, plus, minus = job
    nvars = xk.nvars
    mp = LaurentPoly.constant(nvars)
    for p, e in plus:
        mp = mp * p ** e
    mm = LaurentPoly.constant(nvars)
    for p, e in minus:
        mm = mm * p ** e
    return exchange(xk, mp, mm)


def base_grading(seed: GradedSeed) -> Matrix:
    """Grading of the seed whose cluster is the variables the Laurent
    expressions are written in.

    Every term of a cluster variable has that variable's degree, which gives
    one linear equation per term. The stacked term exponents have full
    column rank (a torus action fixing a cluster fixes the whole field), so
    the solution is unique when it exists.
    """
    nvars = seed.cluster[0].nvars
    if tuple(seed.cluster) == initial_cluster(nvars):
        return seed.grading
    if seed.grading_dim == 0:
        return tuple(() for _ in range(nvars))
    rows, rhs = [], []
    for p, g in zip(seed.cluster, seed.grading):
        for e in p.terms:
            rows.append(list(e))
            rhs.append(list(g))
    try:
        g0 = zlinalg.solve_integer(rows, rhs)
    except ValueError as exc:
        raise DegreeMismatch(f"cluster does not determine the base grading: {exc}") from exc
    if g0 is None:
        raise DegreeMismatch("cluster variables are not homogeneous for any integer base grading")
    return tuple(tuple(r) for r in g0)


def enumerate_seeds(seed: GradedSeed, limits: Limits = Limits(), workers: int = 1) -> EnumerationResult:
    """Explore every seed mutation-equivalent to ``seed``.

    Raises EnumerationLimitExceeded if the graph does not close within
    ``limits``, DegreeMismatch if a variable's grading-row degree disagrees
    with the degree of its Laurent expression, and LaurentViolation if an
    exchange quotient is not Laurent.
    """
    pattern = seed.pattern
    nvars = seed.cluster[0].nvars
    initial_grading = base_grading(seed)
    mutable = pattern.mutable
    columns = {k: c for c, k in enumerate(mutable)}
    frozen_rows = set(pattern.frozen)

    polys: list[LaurentPoly] = []
    degrees: list[Degree] = []
    texts: list[str] = []
    index: dict[LaurentPoly, int] = {}
    frozen: set[int] = set()
    mutable_count = 0

    def register(p: LaurentPoly, is_frozen: bool = False) -> int:
        nonlocal mutable_count
        i = index.get(p)
        if i is not None:
            return i
        i = len(polys)
        index[p] = i
        polys.append(p)
        degrees.append(degree(p, initial_grading))
        texts.append(p.to_str())
        if is_frozen:
            frozen.add(i)
        else:
            mutable_count += 1
            if mutable_count > limits.max_variables:
                raise EnumerationLimitExceeded("variable", limits.max_variables)
        return i

    ids0 = tuple(register(p, i in frozen_rows) for i, p in enumerate(seed.cluster))
    for i, row in zip(ids0, seed.grading):
        if degrees[i] != row:
            raise DegreeMismatch(f"initial variable {polys[i]} has degree {degrees[i]}, grading row {row}")

    def key_of(ids: Sequence[int]) -> SeedKey:
        return tuple(sorted(texts[i] for i in ids))

    seen: dict[SeedKey, int] = {key_of(ids0): 0}
    clusters: list[tuple[int, ...]] = [ids0]
    edges: list[Edge] = []
    cache: dict[tuple[int, Factors, Factors], int] = {}
    frontier = [(key_of(ids0), 0, ids0, pattern.b, seed.grading)]

    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            frontier.sort(key=lambda s: s[0])
            planned = []
            jobs: dict[tuple[int, Factors, Factors], None] = {}
            for _, idx, ids, b, g in frontier:
                for k in mutable:
                    c = columns[k]
                    plus = tuple(sorted((ids[i], row[c]) for i, row in enumerate(b) if row[c] > 0))
                    minus = tuple(sorted((ids[i], -row[c]) for i, row in enumerate(b) if row[c] < 0))
                    ck = (ids[k], plus, minus)
                    planned.append((idx, ids, b, g, k, plus, minus, ck))
                    if ck not in cache:
                        jobs[ck] = None
            payload = [
                (polys[xk], [(polys[i], e) for i, e in plus], [(polys[i], e) for i, e in minus])
                for xk, plus, minus in jobs
            ]
            # Registered as results arrive, so the variable limit stops work early.
            if pool is not None and len(payload) > 1:
                results = pool.map(_divide_job, payload, chunksize=max(1, len(payload) // (4 * workers)))
            else:
                results = map(_divide_job, payload)
            for ck, p in zip(jobs, results):
                cache[ck] = register(p)

            nxt = []
            for idx, ids, b, g, k, plus, minus, ck in planned:
                new = cache[ck]
                minus_e = [0] * len(ids)
                for pos, row in enumerate(b):
                    if row[columns[k]] < 0:
                        minus_e[pos] = -row[columns[k]]
                minus_e[k] -= 1
                g2 = mutate_grading_rows(g, minus_e, k)
                if g2[k] != degrees[new]:
                    raise DegreeMismatch(
                        f"variable {polys[new]}: grading row gives {g2[k]}, Laurent expression gives {degrees[new]}"
                    )
                ids2 = ids[:k] + (new,) + ids[k + 1:]
                key = key_of(ids2)
                target = seen.get(key)
                if target is None:
                    target = len(clusters)
                    if target >= limits.max_seeds:
                        raise EnumerationLimitExceeded("seed", limits.max_seeds)
                    seen[key] = target
                    clusters.append(ids2)
                    nxt.append((key, target, ids2, mutate_matrix(b, mutable, k), g2))
                edges.append(Edge(idx, k, target, ids[k], new, plus, minus))
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()

    return EnumerationResult(nvars, polys, degrees, frozenset(frozen), clusters, edges)


def distribution(result: EnumerationResult, include_frozen: bool = False) -> DegreeDistribution:
    idx = range(len(result.polys)) if include_frozen else result.mutable_indices()
    return DegreeDistribution.from_degrees(result.degrees[i] for i in idx)


@dataclass
class Report:
    ok: bool
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)


def denominator_vector(p: LaurentPoly) -> tuple[int, ...]:
    return tuple(-x for x in p.min_exponent())


def verify_root_bijection(result: EnumerationResult, t: DynkinType, grading: Sequence[Sequence[int]]) -> Report:
    """Check the denominator-vector bijection onto almost positive roots."""
    failures = []
    n = t.n
    mapping: dict[LaurentPoly, Root] = {}
    initial = {LaurentPoly.variable(result.nvars, i): i for i in range(n)}
    for i in result.mutable_indices():
        p, deg = result.polys[i], result.degrees[i]
        if p in initial:
            alpha = Root.negative_simple(n, initial[p])
        else:
            denom = denominator_vector(p)
            if any(x < 0 for x in denom) or not any(denom):
                failures.append(f"{p}: denominator vector {denom} is not a positive root candidate")
                continue
            alpha = Root(denom)
            if p.terms.get(tuple(-x for x in denom), 0) == 0:
                failures.append(f"{p}: numerator has zero constant term")
        mapping[p] = alpha
        expected = degree_of_root(alpha, grading)
        if deg != expected:
            failures.append(f"{p}: degree {deg} but -alpha G = {expected} for alpha = {alpha.coeffs}")
    positives = {r.coeffs for r in positive_roots(t)}
    images = [a.coeffs for a in mapping.values() if a.is_positive]
    if len(images) != len(set(images)):
        failures.append("two variables share a denominator vector")
    missing = positives - set(images)
    extra = set(images) - positives
    if missing:
        failures.append(f"positive roots not hit: {sorted(missing)}")
    if extra:
        failures.append(f"denominator vectors that are not roots: {sorted(extra)}")
    return Report(not failures, failures, {"mapping": mapping})


def frieze_exactness_check(result: EnumerationResult) -> Report:
    """Every recorded exchange: both monomials of degree D and deg(X) + deg(X') = D."""
    failures = []
    degs = result.degrees

    def monomial(factors: Factors) -> Degree:
        d = len(degs[0]) if degs else 0
        out = [0] * d
        for i, e in factors:
            for j in range(d):
                out[j] += e * degs[i][j]
        return tuple(out)

    for e in result.edges:
        dp, dm = monomial(e.plus), monomial(e.minus)
        pair = tuple(a + b for a, b in zip(degs[e.old], degs[e.new]))
        if dp != dm:
            failures.append(f"edge {e.source}-{e.direction}->{e.target}: exchange monomials of degrees {dp} != {dm}")
        elif pair != dp:
            failures.append(f"edge {e.source}-{e.direction}->{e.target}: deg X + deg X' = {pair} != {dp}")
    return Report(not failures, failures, {"edges": len(result.edges)})


def balanced(result: EnumerationResult, include_frozen: bool = False) -> bool:
    return is_balanced(distribution(result, include_frozen))


def cache_key(seed: GradedSeed, limits: Limits) -> str:
    doc = {
        "format": CACHE_FORMAT,
        "B": [list(r) for r in seed.pattern.b],
        "mutable": list(seed.pattern.mutable),
        "G": [list(r) for r in seed.grading],
        "cluster": [p.to_str() for p in seed.cluster],
        "limits": [limits.max_seeds, limits.max_variables],
    }
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:32]


def enumerate_cached(seed: GradedSeed, limits: Limits = Limits(), workers: int = 1,
                     cache_dir: str | Path | None = None) -> EnumerationResult:
    if cache_dir is None:
        return enumerate_seeds(seed, limits, workers)
    path = Path(cache_dir) / f"enum-{cache_key(seed, limits)}.json"
    if path.exists():
        return EnumerationResult.from_json(json.loads(path.read_text()))
    result = enumerate_seeds(seed, limits, workers)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(result.to_json(), separators=(",", ":")))
    tmp.replace(path)
    return result
