"""Homogenisation: extend a seed by frozen variables so that an arbitrary
degree assignment becomes a genuine grading."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import zlinalg
from .cluster import (
    ExchangePattern,
    GradedSeed,
    Matrix,
    SeedError,
    grading_condition,
    initial_cluster,
    standard_grading,
)
from .explore import Limits, enumerate_seeds


@dataclass(frozen=True)
class HomogenisedSeed:
    seed: GradedSeed
    added: tuple[int, ...]
    method: str  # "lemma" | "principal"

    def __post_init__(self):
        mutable = set(self.seed.pattern.mutable)
        if mutable & set(self.added):
            raise SeedError("added variables must be frozen")
        if not grading_condition(self.seed.pattern, self.seed.grading):
            raise SeedError("homogenised grading fails transpose(B) @ G == 0")


def _check_g(pattern: ExchangePattern, g: Sequence[Sequence[int]]) -> list[list[int]]:
    g = [list(map(int, row)) for row in g]
    if len(g) != pattern.rows:
        raise SeedError(f"degree matrix has {len(g)} rows, pattern has {pattern.rows}")
    return g


def homogenise(pattern: ExchangePattern, g: Sequence[Sequence[int]]) -> HomogenisedSeed:
    """Append ``d`` frozen variables: B over ``-G^T B``, grading G over the identity."""
    g = _check_g(pattern, g)
    d = len(g[0]) if g else 0
    if d == 0:
        return HomogenisedSeed(GradedSeed.initial(pattern, g), (), "lemma")
    r = pattern.rows
    gtb = zlinalg.matmul(zlinalg.transpose(g), pattern.b)
    b_hom = [list(row) for row in pattern.b] + [[-x for x in row] for row in gtb]
    g_hom = g + zlinalg.identity(d)
    new_pattern = ExchangePattern(b_hom, pattern.mutable)
    seed = GradedSeed(initial_cluster(r + d), new_pattern, g_hom)
    return HomogenisedSeed(seed, tuple(range(r, r + d)), "lemma")


def principal_homogenise(pattern: ExchangePattern, g: Sequence[Sequence[int]], sign: int = 1) -> HomogenisedSeed:
    """Principal coefficients (``sign`` times the identity) with correcting degrees.

    The new variable of mutable index ``k`` gets the degree that makes column
    ``k`` homogeneous: ``-sign * (B^T G)_k``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not pattern.is_square():
        raise SeedError("principal coefficients need a pattern without frozen rows")
    g = _check_g(pattern, g)
    r = pattern.rows
    btg = zlinalg.matmul(zlinalg.transpose(pattern.b), g) if g and g[0] else [[] for _ in range(r)]
    b_prin = [list(row) for row in pattern.b] + [[sign * int(i == j) for j in range(r)] for i in range(r)]
    g_prin = g + [[-sign * x for x in row] for row in btg]
    new_pattern = ExchangePattern(b_prin, pattern.mutable)
    seed = GradedSeed(initial_cluster(2 * r), new_pattern, g_prin)
    return HomogenisedSeed(seed, tuple(range(r, 2 * r)), "principal")


@dataclass
class RecoveryReport:
    ok: bool
    missing: list[str] = field(default_factory=list)
    extra: list[str] = field(default_factory=list)
    counts: tuple[int, int] = (0, 0)


def quotient_recovers(original: GradedSeed, hom: HomogenisedSeed, limits: Limits = Limits()) -> RecoveryReport:
    """Setting the added variables to 1 maps the homogenised cluster variables
    exactly onto those of the original algebra."""
    base = enumerate_seeds(original, limits)
    lifted = enumerate_seeds(hom.seed, limits)
    want = set(base.mutable_variables)
    got = {p.substitute_one(hom.added) for p in lifted.mutable_variables}
    missing = sorted(p.to_str() for p in want - got)
    extra = sorted(p.to_str() for p in got - want)
    ok = not missing and not extra and len(lifted.mutable_variables) == len(want)
    return RecoveryReport(ok, missing, extra, (len(want), len(lifted.mutable_variables)))


def grading_space(seed_or_pattern: GradedSeed | ExchangePattern) -> Matrix:
    pattern = seed_or_pattern.pattern if isinstance(seed_or_pattern, GradedSeed) else seed_or_pattern
    return standard_grading(pattern)
