from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hochgap import GF, QQ
from hochgap import linalg

small = st.integers(-6, 6)


def matrices(max_m=4, max_n=4):
    return st.integers(1, max_m).flatmap(
        lambda m: st.integers(1, max_n).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_smith_form_against_determinantal_divisors(A):
    m, n = len(A), len(A[0])
    diag, U, V = linalg.smith_normal_form(A, m, n)
    # U A V is diagonal with the returned entries
    UA = [[sum(U[i][k] * A[k][j] for k in range(m)) for j in range(n)] for i in range(m)]
    UAV = [[sum(UA[i][k] * V[k][j] for k in range(n)) for j in range(n)] for i in range(m)]
    for i in range(m):
        for j in range(n):
            want = diag[i] if (i == j and i < len(diag)) else 0
            assert UAV[i][j] == want
    assert all(d > 0 for d in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    dd = linalg.determinantal_divisors(A)
    prods = []
    p = 1
    for d in diag:
        p *= d
        prods.append(p)
    assert prods == dd[:len(prods)]
    assert all(x == 0 for x in dd[len(prods):])


@settings(max_examples=50, deadline=None)
@given(matrices(4, 5))
def test_rank_nullity_over_q(A):
    n = len(A[0])
    r = linalg.rank(QQ, [[Fraction(x) for x in row] for row in A], n)
    N = linalg.nullspace(QQ, [[Fraction(x) for x in row] for row in A], n)
    assert r + len(N) == n
    for v in N:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in A)


@settings(max_examples=50, deadline=None)
@given(matrices(4, 5))
def test_integer_kernel_is_saturated(A):
    n = len(A[0])
    K = linalg.integer_kernel(A, n)
    assert len(K) == n - linalg.rank(QQ, A, n)
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in A)
    if K:
        # a lattice basis of a saturated sublattice has coprime maximal minors
        dd = linalg.determinantal_divisors([list(r) for r in zip(*K)])
        assert dd[len(K) - 1] == 1


def test_solve_and_span_mod_p():
    F = GF(7)
    A = [[1, 2], [3, 4]]
    x = linalg.solve(F, A, [5, 6], 2)
    assert [(A[i][0] * x[0] + A[i][1] * x[1]) % 7 for i in range(2)] == [5, 6]
    sp = linalg.Span(F, 3)
    assert sp.add([1, 2, 3]) and not sp.add([2, 4, 6]) and sp.contains([3, 6, 9])
