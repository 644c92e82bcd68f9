"""Smith and Hermite normal forms of integer matrices.

Matrices are lists of rows of Python ints.  Both routines return the
unimodular transforms alongside the normal form.
"""
from __future__ import annotations

from typing import Sequence

IntMat = list[list[int]]


def int_identity(n: int) -> IntMat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMat:
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)] for row in a]


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(m: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row-style Hermite normal form: returns (H, U) with H = U m.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    come last.  H depends only on the row lattice of m.
    """
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    u = int_identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if a[i][c] == 0:
                continue
            if a[r][c] == 0:
                a[r], a[i] = a[i], a[r]
                u[r], u[i] = u[i], u[r]
                continue
            g, x, y = _xgcd(a[r][c], a[i][c])
            p, q = a[r][c] // g, a[i][c] // g
            # [[x, y], [-q, p]] has determinant 1
            a[r], a[i] = ([x * s + y * t for s, t in zip(a[r], a[i])],
                          [-q * s + p * t for s, t in zip(a[r], a[i])])
            u[r], u[i] = ([x * s + y * t for s, t in zip(u[r], u[i])],
                          [-q * s + p * t for s, t in zip(u[r], u[i])])
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-s for s in a[r]]
            u[r] = [-s for s in u[r]]
        piv = a[r][c]
        for i in range(r):
            f = a[i][c] // piv
            if f:
                a[i] = [s - f * t for s, t in zip(a[i], a[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        r += 1
    return a, u


def lattice_key(rows: Sequence[Sequence[int]], k: int) -> tuple[tuple[int, ...], ...]:
    """Canonical hashable key of the lattice spanned by ``rows`` in Z^k."""
    if not rows:
        return ()
    h, _ = hnf(rows)
    return tuple(tuple(r) for r in h if any(r))


def snf(m: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat, IntMat]:
    """Smith normal form: returns (S, U, V) with S = U m V.

    S is diagonal with nonnegative d_1 | d_2 | ... and U, V unimodular.
    """
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    u = int_identity(rows)
    v = int_identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [s - f * t for s, t in zip(a[dst], a[src])]
        u[dst] = [s - f * t for s, t in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] -= f * row[src]
        for row in v:
            row[dst] -= f * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return a, u, v
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // piv)
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // piv)
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % piv), None)
            if bad is None:
                break
            # fold the offending row in so the next pass shrinks the pivot
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-s for s in a[t]]
            u[t] = [-s for s in u[t]]
    return a, u, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    s, _, _ = snf(m)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i]]


def is_saturated(rows: Sequence[Sequence[int]]) -> bool:
    """True iff Z^k / <rows> is torsion-free."""
    if not rows:
        return True
    return all(d == 1 for d in invariant_factors(rows))
