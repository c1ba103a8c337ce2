"""Exact integer linear algebra on dense matrices.

Matrices are plain lists of rows of Python ints, so every operation is exact
regardless of how large intermediate entries become.
"""

from __future__ import annotations

from typing import Sequence

IntMatrix = list[list[int]]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = [[int(x) for x in row] for row in rows]
    if m:
        width = len(m[0])
        if any(len(row) != width for row in m):
            raise ValueError("ragged matrix")
    return m


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    """Transpose; ``cols`` disambiguates the shape of an empty matrix."""
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} @ {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vecmat(v: Sequence[int], a: Sequence[Sequence[int]]) -> list[int]:
    """Row vector times matrix."""
    if not a:
        return []
    out = [0] * len(a[0])
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                out[j] += x * y
    return out


def is_zero(m: Sequence[Sequence[int]]) -> bool:
    return all(x == 0 for row in m for x in row)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``. ``h`` is in
    row echelon form with positive pivots and the entries above each pivot
    reduced into ``[0, pivot)``. A matrix already in this form yields
    ``u == identity``.
    """
    h = as_matrix(m)
    rows = len(h)
    cols = len(h[0]) if h else 0
    u = identity(rows)

    def swap(i: int, j: int) -> None:
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    def axpy(dst: int, q: int, src: int) -> None:
        # row dst -= q * row src
        if q:
            hs, us = h[src], u[src]
            hd, ud = h[dst], u[dst]
            for c in range(cols):
                hd[c] -= q * hs[c]
            for c in range(rows):
                ud[c] -= q * us[c]

    def negate(i: int) -> None:
        h[i] = [-x for x in h[i]]
        u[i] = [-x for x in u[i]]

    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nonzero = [i for i in range(r, rows) if h[i][c] != 0]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: (abs(h[i][c]), i))
            if piv != r:
                swap(r, piv)
            done = True
            for i in range(r + 1, rows):
                if h[i][c]:
                    axpy(i, h[i][c] // h[r][c], r)
                    if h[i][c]:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            negate(r)
        p = h[r][c]
        for i in range(r):
            axpy(i, h[i][c] // p, r)
        r += 1
    return h, u


def rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals."""
    h, _ = hermite_normal_form(m)
    return sum(1 for row in h if any(row))


def kernel_basis(m: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    """Saturated integer basis of ``{v : m v = 0}``, returned as columns.

    The result is a ``cols x k`` matrix; its transpose is in Hermite normal
    form, so the basis is canonical for the kernel lattice. ``cols`` is only
    needed when ``m`` has no rows.
    """
    n = len(m[0]) if m else (cols or 0)
    if not m:
        return identity(n)
    # u @ m^T = h; rows of u whose h-row vanishes span ker(m) over Z.
    h, u = hermite_normal_form(transpose(m))
    kernel_rows = [u[i] for i in range(n) if not any(h[i])]
    if not kernel_rows:
        return [[] for _ in range(n)]
    canon, _ = hermite_normal_form(kernel_rows)
    canon = [row for row in canon if any(row)]
    return transpose(canon)


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix | None:
    """Solve ``a @ x == b`` over the integers for ``a`` of full column rank.

    Returns ``None`` when no integer solution exists.
    """
    rows = len(a)
    k = len(a[0]) if a else 0
    width = len(b[0]) if b else 0
    h, u = hermite_normal_form(a)
    ub = matmul(u, b) if rows else []
    pivots = []
    for i, row in enumerate(h):
        nz = next((c for c, x in enumerate(row) if x), None)
        if nz is None:
            if any(ub[i]):
                return None
        else:
            pivots.append((i, nz))
    if len(pivots) != k:
        raise ValueError("coefficient matrix does not have full column rank")
    x = zeros(k, width)
    for i, c in reversed(pivots):
        for j in range(width):
            acc = ub[i][j] - sum(h[i][t] * x[t][j] for t in range(c + 1, k))
            q, rem = divmod(acc, h[i][c])
            if rem:
                return None
            x[c][j] = q
    return x
