"""Stratifications, the positivity cone and positive realizations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence, Union

from .errors import EmptyCone, LieGradingError
from .exactmath import matrix as M
from .exactmath.ilp import IntegerProgram, ilp_solve
from .exactmath.lp import EQ, GE, LE, LinearProgram, simplex_solve
from .exactmath.rational import to_rat
from .grading import GroupHom, Grading, Layer, independent_weights, push_forward
from .liealg import LieAlgebra, change_basis, generated_subalgebra, is_derivation, lcs_adapted

OPTIMAL_MODE = "optimal"
FAST_MODE = "fast"
# the big-M constant of the optimal ILP grows like N 2^N; past this many weights use FAST_MODE
MAX_OPTIMAL_WEIGHTS = 20


class NoPositiveRealization(LieGradingError):
    pass


# ------------------------------------------------------------ stratification

@dataclass(frozen=True)
class Stratification:
    grading: Grading
    derivation: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class NotStratifiable:
    """First equation (i, j, k) of the linear system, in the adapted basis and 1-based,
    that makes the system read so far inconsistent."""

    certificate: tuple[int, int, int]
    degrees: tuple[int, ...]


def _stratification_system(h: LieAlgebra, degrees: Sequence[int]):
    n = h.dim
    unknowns = [(i, j) for i in range(n) for j in range(n) if degrees[j] > degrees[i]]
    col = {u: t for t, u in enumerate(unknowns)}
    c = h.structure
    rows, labels = [], []
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(n):
                row = [Fraction(0)] * (len(unknowns) + 1)
                # delta[X_i, X_j] - [delta X_i, X_j] - [X_i, delta X_j], coefficient of X_l
                for k in range(n):
                    if c[i][j][k] and (k, l) in col:
                        row[col[k, l]] += c[i][j][k]
                for m in range(n):
                    if (i, m) in col and c[m][j][l]:
                        row[col[i, m]] -= c[m][j][l]
                    if (j, m) in col and c[i][m][l]:
                        row[col[j, m]] -= c[i][m][l]
                row[-1] = c[i][j][l] * (degrees[i] + degrees[j] - degrees[l])
                if any(row):
                    rows.append(row)
                    labels.append((i + 1, j + 1, l + 1))
    return unknowns, rows, labels


def _first_inconsistent(rows: list[list[Fraction]], width: int) -> Optional[int]:
    """Index of the first row after which the augmented system has no solution."""
    echelon: list[tuple[int, list[Fraction]]] = []
    for idx, row in enumerate(rows):
        r = list(row)
        for piv, er in echelon:
            if r[piv]:
                f = r[piv]
                r = [a - f * b for a, b in zip(r, er)]
        piv = next((t for t in range(width) if r[t]), None)
        if piv is None:
            if r[width]:
                return idx
            continue
        inv = 1 / r[piv]
        r = [a * inv for a in r]
        echelon = [(p, [a - er[piv] * b for a, b in zip(er, r)]) for p, er in echelon]
        echelon.append((piv, r))
    return None


def stratification(g: LieAlgebra) -> Union[Stratification, NotStratifiable]:
    lcs = lcs_adapted(g)
    n = g.dim
    degrees = lcs.degrees
    if n == 0:
        return Stratification(Grading(1, (), g), ())
    p = [list(r) for r in lcs.change_of_basis]
    h = change_basis(g, p)
    unknowns, rows, labels = _stratification_system(h, degrees)
    width = len(unknowns)
    bad = _first_inconsistent(rows, width)
    if bad is not None:
        return NotStratifiable(labels[bad], degrees)
    sol = M.solve([r[:width] for r in rows], [r[width] for r in rows], cols=width) if rows else [Fraction(0)] * width
    d = [[Fraction(degrees[i]) if m == i else Fraction(0) for i in range(n)] for m in range(n)]
    for (i, j), val in zip(unknowns, sol):
        d[j][i] = val
    delta = M.matmul(M.matmul(p, d), M.inverse(p))
    assert is_derivation(g, delta)
    layers = []
    for w in range(1, max(degrees) + 1):
        shifted = [[x - (w if r == c else 0) for c, x in enumerate(row)] for r, row in enumerate(delta)]
        ker = M.nullspace(shifted, cols=n)
        if ker:
            layers.append(Layer((w,), tuple(tuple(v) for v in ker)))
    grading = Grading(1, tuple(layers), g)
    v1 = grading.layer((1,))
    assert v1 is not None and len(generated_subalgebra(g, [list(x) for x in v1.basis])) == n
    return Stratification(grading, tuple(tuple(r) for r in delta))


# ------------------------------------------------------------ positivity

@dataclass(frozen=True)
class Cone:
    """Open cone {a : <a, n> > 0 for every row n}."""

    k: int
    rows: tuple[tuple[int, ...], ...]

    def contains(self, a: Sequence) -> bool:
        a = [to_rat(x) for x in a]
        return all(sum(x * y for x, y in zip(a, n)) > 0 for n in self.rows)

    def feasibility_program(self, closed: bool = False) -> LinearProgram:
        lp = LinearProgram(tuple([0] * self.k), "max")
        for n in self.rows:
            lp.add(n, GE, 0 if closed else 1)
        return lp

    def interior_point(self) -> Optional[list[Fraction]]:
        res = simplex_solve(self.feasibility_program())
        return res.point if res.optimal else None

    @property
    def empty(self) -> bool:
        return self.interior_point() is None

    def irredundant_rows(self) -> tuple[tuple[int, ...], ...]:
        """Rows that are not nonnegative combinations of the other rows."""
        keep = []
        for t, n in enumerate(self.rows):
            # dropping rows one at a time keeps the generated cone unchanged
            others = keep + list(self.rows[t + 1:])
            # n = sum c_s r_s with c >= 0 ?
            lp = LinearProgram(tuple([0] * len(others)), "max", [], [0] * len(others), [None] * len(others))
            for i in range(self.k):
                lp.add([r[i] for r in others], EQ, n[i])
            if not others or not simplex_solve(lp).optimal:
                keep.append(n)
        return tuple(keep)


def positive_cone(w: Grading) -> Cone:
    rows: list[tuple[int, ...]] = []
    for n in w.weights:
        if n not in rows:
            rows.append(tuple(n))
    return Cone(w.rank, tuple(rows))


def cone_is_empty(w: Grading) -> bool:
    return positive_cone(w).empty


@dataclass(frozen=True)
class PositiveRealization:
    w: tuple[int, ...]
    weights: tuple[int, ...]
    max_weight: int
    grading: Grading


def _constant_m(weights: Sequence[Sequence[int]]) -> int:
    m = max((abs(x) for a in weights for x in a), default=0)
    for i, a in enumerate(weights):
        for b in weights[i + 1:]:
            m = max(m, max(abs(x - y) for x, y in zip(a, b)))
    return 1 + m


def _realize(v: Grading, w: Sequence[int]) -> PositiveRealization:
    w = tuple(int(x) for x in w)
    hom = GroupHom((w,), v.rank)
    weights = tuple(hom(a)[0] for a in v.weights)
    if any(x < 1 for x in weights) or len(set(weights)) != len(weights):
        raise AssertionError(f"projection {w} is not a positive realization")
    pushed = push_forward(v, hom)
    assert pushed.partition() == v.partition()
    return PositiveRealization(w, weights, max(weights, default=0), pushed)


def positive_realization(v: Grading, mode: str = OPTIMAL_MODE, max_weights: int = MAX_OPTIMAL_WEIGHTS
                         ) -> PositiveRealization:
    """A positive integer realization of v; OPTIMAL_MODE minimizes the largest weight."""
    k = v.rank
    alphas = v.weights
    n = len(alphas)
    if any(not any(a) for a in alphas):
        raise NoPositiveRealization("the grading has weight 0")
    if n == 0:
        return PositiveRealization(tuple([0] * k), (), 0, v)
    if mode == FAST_MODE:
        res = simplex_solve(positive_cone(v).feasibility_program())
        if not res.optimal:
            raise NoPositiveRealization("0 lies in the convex hull of the weights")
        scale = lcm(*(x.denominator for x in res.point))
        base = [int(x * scale) for x in res.point]
        big = _constant_m(alphas)
        return _realize(v, [big ** k * b + big ** t for t, b in enumerate(base)])
    if mode != OPTIMAL_MODE:
        raise ValueError(f"unknown mode {mode!r}")
    if n > max_weights:
        raise ValueError(f"{n} weights exceed the optimal-mode cap {max_weights}; use the fast mode")
    if positive_cone(v).empty:
        raise NoPositiveRealization("0 lies in the convex hull of the weights")

    big = _constant_m(alphas)
    c = (3 + n * 2 ** (n + 1)) * big ** k
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    # variables: w_1..w_k, z, b_ij
    nv = k + 1 + len(pairs)
    obj = [0] * nv
    obj[k] = 1
    # every weight lies in [1, c] at some optimum, which bounds w through a weight basis
    idx = independent_weights(alphas)
    inv = M.inverse(M.mat([alphas[i] for i in idx]))
    wbound = [int(c * sum(abs(x) for x in row)) + 1 for row in inv]
    lower = [-b for b in wbound] + [1] + [0] * len(pairs)
    upper = list(wbound) + [c] + [1] * len(pairs)
    lp = LinearProgram(tuple(obj), "min", [], lower, upper)
    for a in alphas:
        row = list(a) + [0] * (nv - k)
        lp.add(row, GE, 1)
        row[k] = -1
        lp.add(row, LE, 0)
    for t, (i, j) in enumerate(pairs):
        diff = [x - y for x, y in zip(alphas[i], alphas[j])]
        row = diff + [0] * (nv - k)
        row[k + 1 + t] = -(1 + c)
        lp.add(row, GE, -c)
        lp.add(row, LE, -1)
    ip = IntegerProgram(lp, [True] * nv, [False] * (k + 1) + [True] * len(pairs))
    res = ilp_solve(ip)
    if not res.optimal:
        raise NoPositiveRealization("the integer program is infeasible")
    return _realize(v, res.point[:k])


def heintze_derivation(v: Grading, a: Optional[Sequence] = None) -> M.Mat:
    """Diagonalizable derivation scaling each layer by its (projected) weight.

    With ``a`` the weights are projected by <a, .>; the result is normalized so
    the smallest eigenvalue is 1.
    """
    g = v.carrier
    lcs_adapted(g)
    if a is None:
        if v.rank != 1:
            raise ValueError("a projection is required for gradings of rank > 1")
        a = [1]
    a = [to_rat(x) for x in a]
    values = [sum((x * y for x, y in zip(a, layer.weight)), Fraction(0)) for layer in v.layers]
    if any(x <= 0 for x in values):
        raise NoPositiveRealization("projected weights are not all positive")
    low = min(values)
    columns, diag = [], []
    for layer, val in zip(v.layers, values):
        columns.extend(list(b) for b in layer.basis)
        diag.extend([val / low] * layer.dim)
    p = M.transpose(columns)
    d = [[diag[i] if i == j else Fraction(0) for j in range(g.dim)] for i in range(g.dim)]
    out = M.matmul(M.matmul(p, d), M.inverse(p))
    assert is_derivation(g, out)
    return out


def heintze_from_realization(r: PositiveRealization) -> M.Mat:
    return heintze_derivation(r.grading)


__all__ = ["Stratification", "NotStratifiable", "stratification", "Cone", "positive_cone", "cone_is_empty",
           "PositiveRealization", "positive_realization", "NoPositiveRealization", "heintze_derivation",
           "heintze_from_realization", "OPTIMAL_MODE", "FAST_MODE", "EmptyCone"]
