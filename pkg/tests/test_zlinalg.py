import itertools

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from gradedcluster import zlinalg
from gradedcluster.roots import DynkinType, bipartite_matrix

from strategies import int_matrix


def is_hnf(h):
    """Row echelon, positive pivots, entries above a pivot reduced into [0, pivot)."""
    last = -1
    seen_zero = False
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        j = nz[0]
        if j <= last or row[j] <= 0:
            return False
        if any(not 0 <= h[k][j] < row[j] for k in range(i)):
            return False
        last = j
    return True


def test_identity_is_fixed():
    h, u = zlinalg.hermite_normal_form([[1, 0], [0, 1]])
    assert h == [[1, 0], [0, 1]] and u == [[1, 0], [0, 1]]


def test_two_by_two_example():
    m = [[2, 4], [1, 3]]
    h, u = zlinalg.hermite_normal_form(m)
    assert zlinalg.matmul(u, m) == h
    assert abs(zlinalg.determinant(u)) == 1
    # Row space of m is spanned by (1,3),(0,2); reduced form puts 1 above the pivot 2.
    assert h == [[1, 1], [0, 2]]
    assert is_hnf(h)


def test_zero_matrix():
    h, u = zlinalg.hermite_normal_form([[0] * 3 for _ in range(3)])
    assert h == [[0] * 3 for _ in range(3)]
    assert u == zlinalg.identity(3)


@given(int_matrix())
def test_hnf_postconditions(m):
    h, u = zlinalg.hermite_normal_form(m)
    assert zlinalg.matmul(u, m) == h
    assert abs(zlinalg.determinant(u)) == 1
    assert is_hnf(h)


@given(int_matrix(), st.data())
def test_hnf_is_a_row_lattice_invariant(m, data):
    # Left multiplication by a random unimodular matrix leaves the HNF unchanged.
    r = len(m)
    v = zlinalg.identity(r)
    for _ in range(data.draw(st.integers(0, 6))):
        i, j = data.draw(st.integers(0, r - 1)), data.draw(st.integers(0, r - 1))
        if i != j:
            c = data.draw(st.integers(-3, 3))
            v[i] = [a + c * b for a, b in zip(v[i], v[j])]
    assert zlinalg.hermite_normal_form(zlinalg.matmul(v, m))[0] == zlinalg.hermite_normal_form(m)[0]


@given(int_matrix())
def test_hnf_idempotent(m):
    h, _ = zlinalg.hermite_normal_form(m)
    h2, u2 = zlinalg.hermite_normal_form(h)
    assert h2 == h and u2 == zlinalg.identity(len(m))


@given(int_matrix())
def test_rank_matches_sympy(m):
    assert zlinalg.rank(m) == sympy.Matrix(m).rank()


@given(int_matrix(lo=-3, hi=3))
def test_determinant_matches_sympy(m):
    n = min(len(m), len(m[0]))
    sq = [row[:n] for row in m[:n]]
    assert zlinalg.determinant(sq) == sympy.Matrix(sq).det()


@given(int_matrix())
def test_kernel_basis(m):
    cols = len(m[0])
    k = zlinalg.kernel_basis(m)
    d = len(k[0]) if k and k[0] else 0
    assert d == cols - sympy.Matrix(m).rank()
    if d:
        assert zlinalg.is_zero(zlinalg.matmul(m, k))
        # Saturated: the maximal minors of the basis have gcd 1.
        assert sympy.Matrix(k).T.rank() == d
        minors = [sympy.Matrix(k).extract(list(rows), list(range(d))).det()
                  for rows in itertools.combinations(range(cols), d)]
        assert sympy.gcd_list(minors) == 1


def test_kernel_examples():
    a3 = [[0, 1, 0], [-1, 0, -1], [0, 1, 0]]
    assert zlinalg.kernel_basis(zlinalg.transpose(a3)) == [[1], [0], [-1]]
    k = zlinalg.kernel_basis(zlinalg.transpose([[0, 1], [-1, 0]]))
    assert all(len(r) == 0 for r in k)
    k = zlinalg.kernel_basis(zlinalg.identity(4))
    assert len(k) == 4 and all(len(r) == 0 for r in k)


def test_rank_examples():
    assert zlinalg.rank(bipartite_matrix(DynkinType("A", 5))) == 4
    for name in ("E6", "E8", "F4", "G2"):
        t = DynkinType.parse(name)
        assert zlinalg.rank(bipartite_matrix(t)) == t.n
    assert zlinalg.rank([[0, 0], [0, 0]]) == 0


@given(int_matrix(lo=-4, hi=4), st.data())
def test_solve_integer_finds_solutions(a, data):
    cols = len(a[0])
    assume(zlinalg.rank(a) == cols)
    x = [[data.draw(st.integers(-5, 5))] for _ in range(cols)]
    b = zlinalg.matmul(a, x)
    y = zlinalg.solve_integer(a, b)
    assert y is not None
    assert zlinalg.matmul(a, y) == b


def test_solve_integer_needs_full_column_rank():
    with pytest.raises(ValueError):
        zlinalg.solve_integer([[1, 1]], [[2]])


def test_solve_integer_rejects_non_integer():
    assert zlinalg.solve_integer([[2]], [[1]]) is None
    assert zlinalg.solve_integer([[1], [1]], [[1], [2]]) is None
