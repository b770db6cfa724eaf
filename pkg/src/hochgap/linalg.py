"""Exact linear algebra over Q, F_p and Z.

Matrices are lists of rows; vectors are lists.  Field routines take the
coefficient ring so that F_p arithmetic stays reduced.
"""

from __future__ import annotations

from math import gcd
from typing import List, Optional, Sequence, Tuple

from hochgap.coeffs import CoeffRing

Matrix = List[list]


def zeros(K: CoeffRing, m: int, n: int) -> Matrix:
    z = K(0)
    return [[z] * n for _ in range(m)]


def identity(K: CoeffRing, n: int) -> Matrix:
    M = zeros(K, n, n)
    for i in range(n):
        M[i][i] = K(1)
    return M


def transpose(A: Matrix, ncols: Optional[int] = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(K: CoeffRing, A: Matrix, B: Matrix, inner: Optional[int] = None) -> Matrix:
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append([K(x) for x in acc] if K.p else acc)
    return out


def matvec(K: CoeffRing, A: Matrix, v: Sequence) -> list:
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s += a * b
        out.append(K(s) if K.p else s)
    return out


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

def rref(K: CoeffRing, rows: Sequence[Sequence], ncols: int) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form of the row space; returns (rows, pivots)."""
    A = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    p = K.p
    for c in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = K.inv(A[r][c])
        if p:
            A[r] = [(x * inv) % p for x in A[r]]
        else:
            A[r] = [x * inv for x in A[r]]
        prow = A[r]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                row = A[i]
                if p:
                    A[i] = [(x - f * y) % p for x, y in zip(row, prow)]
                else:
                    A[i] = [x - f * y if y else x for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(K: CoeffRing, rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    if K.kind == "Z":
        return rank(CoeffRing("Q"), rows, ncols)
    return len(rref(K, rows, ncols)[0])


def nullspace(K: CoeffRing, A: Matrix, ncols: int) -> Matrix:
    """Basis (as vectors) of {x : A x = 0} over a field."""
    R, piv = rref(K, A, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [K(0)] * ncols
        v[f] = K(1)
        for row, pc in zip(R, piv):
            if row[f]:
                v[pc] = K.neg(row[f])
        basis.append(v)
    return basis


def solve(K: CoeffRing, A: Matrix, b: Sequence, ncols: int) -> Optional[list]:
    """Some x with A x = b (free variables zero), or None."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(K, aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [K(0)] * ncols
    for row, pc in zip(R, piv):
        x[pc] = row[ncols]
    return x


class Span:
    """Incrementally maintained subspace of K^n (echelon basis)."""

    def __init__(self, K: CoeffRing, n: int):
        self.K = K
        self.n = n
        self.rows: Matrix = []
        self.pivots: List[int] = []

    def reduce(self, v: Sequence) -> list:
        K = self.K
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            if v[pc]:
                f = v[pc]
                if K.p:
                    v = [(x - f * y) % K.p for x, y in zip(v, row)]
                else:
                    v = [x - f * y if y else x for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence) -> bool:
        """Add v; True if the span grew."""
        r = self.reduce(v)
        for c, x in enumerate(r):
            if x:
                inv = self.K.inv(x)
                r = [self.K.mul(y, inv) for y in r]
                # keep rows fully reduced at this new pivot
                for i, row in enumerate(self.rows):
                    if row[c]:
                        f = row[c]
                        self.rows[i] = [self.K.sub(a, self.K.mul(f, b)) for a, b in zip(row, r)]
                self.rows.append(r)
                self.pivots.append(c)
                return True
        return False

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __len__(self):
        return len(self.rows)

    def copy(self) -> "Span":
        s = Span(self.K, self.n)
        s.rows = [list(r) for r in self.rows]
        s.pivots = list(self.pivots)
        return s


# ---------------------------------------------------------------------------
# integers
# ---------------------------------------------------------------------------

def smith_normal_form(A: Matrix, m: Optional[int] = None, n: Optional[int] = None):
    """Return (diag, U, V) with U*A*V = D, D diagonal with d_1 | d_2 | ...

    ``diag`` lists the nonzero diagonal entries (all positive).
    """
    if m is None:
        m = len(A)
    if n is None:
        n = len(A[0]) if A else 0
    A = [list(map(int, r)) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f*row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col_dst += f*col_src
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        diag.append(A[t][t])
        t += 1
    return diag, U, V


def hermite_basis(gens: Sequence[Sequence[int]], n: int) -> Matrix:
    """Canonical (Hermite normal form) basis of the lattice spanned by gens."""
    rows = [list(map(int, g)) for g in gens if any(g)]
    r = 0
    pivots = []
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[i0] = rows[i0], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < len(rows) and rows[r][c]:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
    return rows[:r]


def lattice_coords(basis: Matrix, v: Sequence[int]) -> Optional[list]:
    """Integer coordinates of v in an echelon basis, or None if v is outside."""
    v = list(map(int, v))
    out = []
    for row in basis:
        pc = next(i for i, x in enumerate(row) if x)
        q, rem = divmod(v[pc], row[pc])
        if rem:
            return None
        out.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return out


def integer_kernel(A: Matrix, n: int) -> Matrix:
    """Z-basis (as vectors) of {x in Z^n : A x = 0}."""
    if not A:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    diag, U, V = smith_normal_form(A, len(A), n)
    r = len(diag)
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def invariant_factors(rel_rows: Matrix, n: int) -> Tuple[List[int], int]:
    """Torsion invariant factors (>1) and free rank of Z^n / rowspan."""
    diag, _, _ = smith_normal_form(rel_rows, len(rel_rows), n) if rel_rows else ([], None, None)
    return [d for d in diag if d != 1], n - len(diag)


def determinantal_divisors(A: Matrix) -> List[int]:
    """gcd of k x k minors for k = 1..; brute force oracle for small matrices."""
    from itertools import combinations
    from fractions import Fraction

    m = len(A)
    n = len(A[0]) if A else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, _det([[A[i][j] for j in cs] for i in rs]))
        out.append(g)
    return out


def _det(M) -> int:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * M[0][j] * _det(minor)
    return total
