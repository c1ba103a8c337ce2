"""Seeds, graded seeds and their mutation.

Indices are 0-based throughout the library. ``b[i][c]`` is the entry of the
exchange matrix in the row of variable ``i`` and the column of the ``c``-th
mutable variable; a positive entry means arrows ``i -> mutable[c]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import zlinalg
from .laurent import InexactDivision, LaurentPoly

Matrix = tuple[tuple[int, ...], ...]
Degree = tuple[int, ...]


class SeedError(ValueError):
    """Invalid seed data or an operation requested at a frozen index."""


class InhomogeneousError(ValueError):
    def __init__(self, message: str, witnesses: tuple):
        super().__init__(message)
        self.witnesses = witnesses


class LaurentViolation(ArithmeticError):
    """An exchange quotient was not a Laurent polynomial."""


def _freeze(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


@dataclass(frozen=True)
class ExchangePattern:
    b: Matrix
    mutable: tuple[int, ...]

    def __post_init__(self):
        b = _freeze(self.b)
        mutable = tuple(int(i) for i in self.mutable)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "mutable", mutable)
        r = len(b)
        m = len(mutable)
        if any(len(row) != m for row in b):
            raise SeedError(f"exchange matrix must have {m} columns")
        if len(set(mutable)) != m or any(not 0 <= i < r for i in mutable):
            raise SeedError(f"bad mutable index set {mutable}")
        for a in range(m):
            for c in range(m):
                x, y = b[mutable[a]][c], b[mutable[c]][a]
                if a == c and x:
                    raise SeedError("principal part has a nonzero diagonal entry")
                if x * y > 0 or (x == 0) != (y == 0):
                    raise SeedError(f"principal part is not sign-skew-symmetric at ({a}, {c})")

    @classmethod
    def square(cls, b: Sequence[Sequence[int]]) -> ExchangePattern:
        """All rows mutable."""
        return cls(_freeze(b), tuple(range(len(b))))

    @property
    def rows(self) -> int:
        return len(self.b)

    @property
    def frozen(self) -> tuple[int, ...]:
        mut = set(self.mutable)
        return tuple(i for i in range(self.rows) if i not in mut)

    def column(self, k: int) -> int:
        try:
            return self.mutable.index(k)
        except ValueError:
            raise SeedError(f"index {k} is not mutable") from None

    def column_vector(self, k: int) -> list[int]:
        c = self.column(k)
        return [row[c] for row in self.b]

    def principal_part(self) -> Matrix:
        return tuple(self.b[i] for i in self.mutable)

    def is_square(self) -> bool:
        return self.rows == len(self.mutable) and self.mutable == tuple(range(self.rows))

    def to_square(self) -> list[list[int]]:
        """Pad to r x r with zero columns for frozen rows."""
        out = [[0] * self.rows for _ in range(self.rows)]
        for c, j in enumerate(self.mutable):
            for i in range(self.rows):
                out[i][j] = self.b[i][c]
        return out


def b_vectors(pattern: ExchangePattern, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Exponent vectors of the two exchange monomials at ``k`` (including the ``-e_k``)."""
    col = pattern.column_vector(k)
    plus = [max(x, 0) for x in col]
    minus = [max(-x, 0) for x in col]
    plus[k] -= 1
    minus[k] -= 1
    return tuple(plus), tuple(minus)


def e_matrix(pattern: ExchangePattern, k: int) -> list[list[int]]:
    col = pattern.column_vector(k)
    e = zlinalg.identity(pattern.rows)
    for r in range(pattern.rows):
        e[r][k] = -1 if r == k else max(0, -col[r])
    return e


def mutate_matrix(b: Matrix, mutable: Sequence[int], k: int) -> Matrix:
    """Entrywise matrix mutation at row ``k`` (``k`` must be in ``mutable``)."""
    ck = list(mutable).index(k)
    bk = b[k]
    out = []
    for i, row in enumerate(b):
        if i == k:
            out.append(tuple(-x for x in row))
            continue
        bik = row[ck]
        if bik == 0:
            out.append(row)
            continue
        new = []
        for c, x in enumerate(row):
            if c == ck:
                new.append(-x)
            else:
                bkc = bk[c]
                if bik > 0 and bkc > 0:
                    x += bik * bkc
                elif bik < 0 and bkc < 0:
                    x -= bik * bkc
                new.append(x)
        out.append(tuple(new))
    return tuple(out)


def mutate_pattern(pattern: ExchangePattern, k: int) -> ExchangePattern:
    pattern.column(k)
    return ExchangePattern(mutate_matrix(pattern.b, pattern.mutable, k), pattern.mutable)


def finite_type(pattern: ExchangePattern, max_matrices: int = 20000) -> bool | None:
    """Finite cluster type test on the principal part.

    Finite type holds exactly when every matrix in the mutation class has
    ``|b_ij * b_ji| <= 3``. Returns False at the first violation, True once
    the (labelled) mutation class closes, and None if it has more than
    ``max_matrices`` members, as E7 and E8 do.
    """
    square = pattern.principal_part()
    r = len(square)
    everything = tuple(range(r))
    start = tuple(tuple(row) for row in square)
    seen = {start}
    stack = [start]
    while stack:
        b = stack.pop()
        if any(abs(b[i][j] * b[j][i]) > 3 for i in range(r) for j in range(i + 1, r)):
            return False
        for k in range(r):
            nb = mutate_matrix(b, everything, k)
            if nb not in seen:
                if len(seen) >= max_matrices:
                    return None
                seen.add(nb)
                stack.append(nb)
    return True


def grading_condition(pattern: ExchangePattern, g: Sequence[Sequence[int]]) -> bool:
    """True when ``transpose(b) @ g == 0``."""
    if len(g) != pattern.rows:
        return False
    return zlinalg.is_zero(zlinalg.matmul(zlinalg.transpose(pattern.b, len(pattern.mutable)), g))


def mutate_grading_rows(g: Matrix, minus: Sequence[int], k: int) -> Matrix:
    new_row = tuple(zlinalg.vecmat(minus, g)) if g and g[0] else ()
    return g[:k] + (new_row,) + g[k + 1:]


def mutate_grading(pattern: ExchangePattern, grading: Sequence[Sequence[int]], k: int) -> Matrix:
    """``E^T G``: only row ``k`` changes, becoming ``(b_k^-)^T G``."""
    g = _freeze(grading)
    if not grading_condition(pattern, g):
        raise SeedError("matrix is not a grading for this pattern")
    _, minus = b_vectors(pattern, k)
    return mutate_grading_rows(g, minus, k)


def degree(p: LaurentPoly, grading: Sequence[Sequence[int]]) -> Degree:
    """Common degree of all monomials of ``p``.

    Raises InhomogeneousError carrying two monomials of different degree.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no degree")
    if len(grading) != p.nvars:
        raise ValueError(f"grading has {len(grading)} rows, polynomial has {p.nvars} variables")
    d = len(grading[0]) if grading else 0
    first = None
    first_e = None
    for e, _ in p.items():
        deg = [0] * d
        for x, row in zip(e, grading):
            if x:
                for j in range(d):
                    deg[j] += x * row[j]
        deg_t = tuple(deg)
        if first is None:
            first, first_e = deg_t, e
        elif deg_t != first:
            raise InhomogeneousError(
                f"monomials {first_e} and {e} have degrees {first} and {deg_t}",
                ((first_e, first), (e, deg_t)),
            )
    return first


def monomial_degree(exponent: Sequence[int], grading: Sequence[Sequence[int]]) -> Degree:
    d = len(grading[0]) if grading else 0
    return tuple(zlinalg.vecmat(exponent, grading)) if d else ()


def standard_grading(pattern: ExchangePattern) -> Matrix:
    """Canonical lattice basis of ``ker(b^T)`` as the columns of an r x d matrix."""
    bt = zlinalg.transpose(pattern.b, len(pattern.mutable))
    return _freeze(zlinalg.kernel_basis(bt, cols=pattern.rows))


def change_of_basis(standard: Sequence[Sequence[int]], h: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer ``M`` with ``h == standard @ M``."""
    d = len(standard[0]) if standard else 0
    if d == 0:
        if not zlinalg.is_zero(h):
            raise SeedError("nonzero grading but the standard grading is empty")
        return []
    m = zlinalg.solve_integer(standard, h)
    if m is None:
        raise SeedError("no integer change of basis: the first grading is not standard")
    return m


def initial_cluster(r: int) -> tuple[LaurentPoly, ...]:
    return tuple(LaurentPoly.variable(r, i) for i in range(r))


def exchange_product(cluster: Sequence[LaurentPoly], exponent: Sequence[int], k: int) -> LaurentPoly:
    """Product of cluster variables to the nonnegative parts of ``exponent`` other than ``k``."""
    out = LaurentPoly.constant(cluster[0].nvars)
    for i, e in enumerate(exponent):
        if i != k and e > 0:
            out = out * cluster[i] ** e
    return out


def exchange(xk: LaurentPoly, plus: LaurentPoly, minus: LaurentPoly) -> LaurentPoly:
    try:
        return (plus + minus).exact_div(xk)
    except InexactDivision as exc:
        raise LaurentViolation(f"exchange binomial not divisible by {xk}") from exc


@dataclass(frozen=True)
class GradedSeed:
    cluster: tuple[LaurentPoly, ...]
    pattern: ExchangePattern
    grading: Matrix = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "cluster", tuple(self.cluster))
        g = _freeze(self.grading) if self.grading else tuple(() for _ in range(self.pattern.rows))
        object.__setattr__(self, "grading", g)
        if len(self.cluster) != self.pattern.rows:
            raise SeedError("cluster size does not match exchange matrix rows")
        if not grading_condition(self.pattern, g):
            raise SeedError("grading condition transpose(B) @ G == 0 fails")

    @classmethod
    def initial(cls, pattern: ExchangePattern, grading: Sequence[Sequence[int]] | None = None) -> GradedSeed:
        if grading is None:
            grading = standard_grading(pattern)
        return cls(initial_cluster(pattern.rows), pattern, _freeze(grading))

    @property
    def rank(self) -> int:
        return len(self.pattern.mutable)

    @property
    def grading_dim(self) -> int:
        return len(self.grading[0]) if self.grading else 0


def mutate_seed(seed: GradedSeed, k: int) -> GradedSeed:
    pattern = seed.pattern
    plus_e, minus_e = b_vectors(pattern, k)
    plus = exchange_product(seed.cluster, plus_e, k)
    minus = exchange_product(seed.cluster, minus_e, k)
    new = exchange(seed.cluster[k], plus, minus)
    cluster = seed.cluster[:k] + (new,) + seed.cluster[k + 1:]
    return GradedSeed(cluster, mutate_pattern(pattern, k), mutate_grading_rows(seed.grading, minus_e, k))
