"""Dense matrices over Q stored as lists of rows of Fractions.

Every routine pivots on the first nonzero entry by index, so results are
reproducible byte-for-byte.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .rational import to_rat

Mat = list[list[Fraction]]
Vec = list[Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def mat(rows: Iterable[Iterable]) -> Mat:
    return [[to_rat(x) for x in row] for row in rows]


def vec(values: Iterable) -> Vec:
    return [to_rat(x) for x in values]


def zeros(rows: int, cols: int) -> Mat:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Mat:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def unit(n: int, i: int) -> Vec:
    v = [ZERO] * n
    v[i] = ONE
    return v


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def copy(m: Sequence[Sequence[Fraction]]) -> Mat:
    return [list(row) for row in m]


def transpose(m: Sequence[Sequence[Fraction]], cols: Optional[int] = None) -> Mat:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Mat:
    bt = transpose(b)
    inner = len(b)
    if a and len(a[0]) != inner:
        raise ValueError(f"shape mismatch: {len(a[0])} vs {inner}")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * bt[j][k] for k, x in nz), ZERO) for j in range(cols)])
    return out


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vec:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def add(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Sequence[Sequence[Fraction]], s) -> Mat:
    s = to_rat(s)
    return [[s * x for x in row] for row in a]


def lincomb(coeffs: Sequence[Fraction], mats: Sequence[Sequence[Sequence[Fraction]]]) -> Mat:
    """Sum of coeffs[i] * mats[i]; all matrices share one shape."""
    r, c = shape(mats[0])
    out = zeros(r, c)
    for s, m in zip(coeffs, mats):
        if not s:
            continue
        for i in range(r):
            row, orow = m[i], out[i]
            for j in range(c):
                if row[j]:
                    orow[j] += s * row[j]
    return out


def commutator(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Mat:
    return sub(matmul(a, b), matmul(b, a))


def is_zero(m: Sequence[Sequence[Fraction]]) -> bool:
    return all(not x for row in m for x in row)


def flatten(m: Sequence[Sequence[Fraction]]) -> Vec:
    return [x for row in m for x in row]


def unflatten(v: Sequence[Fraction], rows: int, cols: int) -> Mat:
    return [list(v[i * cols:(i + 1) * cols]) for i in range(rows)]


def rref(m: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot columns.

    ``ncols`` limits pivot search to the leading columns (augmented systems).
    """
    a = copy(m)
    rows = len(a)
    cols = len(a[0]) if a else 0
    limit = cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        pivrow = a[r]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], pivrow)]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence[Fraction]], cols: Optional[int] = None) -> list[Vec]:
    """Basis of {x : m x = 0}; one vector per free column in ascending order."""
    if cols is None:
        cols = len(m[0]) if m else 0
    if not m:
        return [unit(cols, j) for j in range(cols)]
    r, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        x = [ZERO] * cols
        x[free] = ONE
        for row_idx, pc in enumerate(pivots):
            x[pc] = -r[row_idx][free]
        basis.append(x)
    return basis


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction], cols: Optional[int] = None) -> Optional[Vec]:
    """One solution of a x = b (free variables zero), or None if inconsistent."""
    if cols is None:
        cols = len(a[0]) if a else 0
    if not a:
        return [ZERO] * cols
    aug = [list(row) + [to_rat(bi)] for row, bi in zip(a, b)]
    r, pivots = rref(aug, ncols=cols)
    for row in r[len(pivots):]:
        if row[cols]:
            return None
    x = [ZERO] * cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][cols]
    return x


def inverse(m: Sequence[Sequence[Fraction]]) -> Mat:
    n = len(m)
    aug = [list(row) + unit(n, i) for i, row in enumerate(m)]
    r, pivots = rref(aug, ncols=n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = copy(m)
    n = len(a)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        inv = ONE / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def row_basis(vectors: Sequence[Sequence[Fraction]]) -> Mat:
    """Canonical basis (nonzero RREF rows) of the span of ``vectors``."""
    if not vectors:
        return []
    r, pivots = rref(vectors)
    return r[:len(pivots)]


def in_span(vectors: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    if not any(v):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [list(v)]) == rank(vectors)


def coordinates(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Optional[Vec]:
    """Coefficients c with sum c_i basis[i] = v, or None when v is outside the span."""
    if not basis:
        return [] if not any(v) else None
    return solve(transpose(basis), v, cols=len(basis))


def intersect(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Mat:
    """Canonical basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    n = len(a[0])
    # x_a . a = x_b . b  <=>  [a; -b]^T (x_a, x_b) = 0
    cols = list(a) + [[-x for x in row] for row in b]
    sol = nullspace(transpose(cols), cols=len(cols))
    out = []
    for s in sol:
        out.append([sum((s[i] * a[i][j] for i in range(len(a)) if s[i]), ZERO) for j in range(n)])
    return row_basis(out)
