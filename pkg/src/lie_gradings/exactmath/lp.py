"""Exact two-phase simplex over Q.

Bland's rule drives both phases, so the solver never cycles and always
returns the same basis for the same input.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .rational import to_rat

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((a * b for a, b in zip(self.coeffs, x)), Fraction(0))
        if self.relation == LE:
            return lhs <= self.rhs
        if self.relation == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class LinearProgram:
    """maximize/minimize c.x subject to linear constraints and optional box bounds.

    A bound of ``None`` means the variable is unbounded on that side.
    """

    objective: tuple[Fraction, ...]
    sense: str = "max"
    constraints: list[Constraint] = field(default_factory=list)
    lower: list[Optional[Fraction]] = field(default_factory=list)
    upper: list[Optional[Fraction]] = field(default_factory=list)

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")
        self.objective = tuple(to_rat(c) for c in self.objective)
        n = len(self.objective)
        if not self.lower:
            self.lower = [None] * n
        if not self.upper:
            self.upper = [None] * n
        self.lower = [None if b is None else to_rat(b) for b in self.lower]
        self.upper = [None if b is None else to_rat(b) for b in self.upper]
        if len(self.lower) != n or len(self.upper) != n:
            raise ValueError("bound vectors must match the objective length")
        for con in self.constraints:
            if len(con.coeffs) != n:
                raise ValueError("constraint width does not match the objective")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add(self, coeffs: Sequence, relation: str, rhs) -> None:
        self.constraints.append(Constraint(tuple(to_rat(c) for c in coeffs), relation, to_rat(rhs)))

    def copy(self) -> "LinearProgram":
        return LinearProgram(self.objective, self.sense, list(self.constraints),
                             list(self.lower), list(self.upper))

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        for j, xj in enumerate(x):
            if self.lower[j] is not None and xj < self.lower[j]:
                return False
            if self.upper[j] is not None and xj > self.upper[j]:
                return False
        return all(c.satisfied_by(x) for c in self.constraints)

    def value_at(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * b for a, b in zip(self.objective, x)), Fraction(0))


@dataclass
class LPResult:
    status: str
    value: Optional[Fraction] = None
    point: Optional[list[Fraction]] = None
    # reduced costs of the final basis in the internal max-form; all <= 0 at optimum
    reduced_costs: Optional[list[Fraction]] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    def certificate_ok(self) -> bool:
        return self.reduced_costs is not None and all(d <= 0 for d in self.reduced_costs)


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int], ncols: int):
        self.rows = rows  # each row: ncols coefficients + rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        row = [x * inv for x in row]
        self.rows[r] = row
        for i, other in enumerate(self.rows):
            if i != r and other[c]:
                f = other[c]
                self.rows[i] = [x - f * y for x, y in zip(other, row)]
        self.basis[r] = c

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        d = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(self.ncols):
                    if row[j]:
                        d[j] -= cb * row[j]
        return d

    def optimize(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> bool:
        """Maximize cost over the current basis; False when unbounded."""
        while True:
            d = self.reduced_costs(cost)
            enter = next((j for j in range(self.ncols) if allowed[j] and d[j] > 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                if row[enter] > 0:
                    ratio = row[-1] / row[enter]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter)


def simplex_solve(lp: LinearProgram) -> LPResult:
    n = lp.num_vars
    # substitution x_j = offset_j + sum(sign * y_col) over internal nonnegative columns
    var_map: list[list[tuple[int, int]]] = []
    offset: list[Fraction] = []
    extra: list[tuple[list[Fraction], str, Fraction]] = []
    ncols = 0
    for j in range(n):
        lo, hi = lp.lower[j], lp.upper[j]
        if lo is not None:
            var_map.append([(ncols, 1)])
            offset.append(lo)
            if hi is not None:
                if hi < lo:
                    return LPResult(INFEASIBLE)
                extra.append(({ncols: Fraction(1)}, LE, hi - lo))
            ncols += 1
        elif hi is not None:
            var_map.append([(ncols, -1)])
            offset.append(hi)
            ncols += 1
        else:
            var_map.append([(ncols, 1), (ncols + 1, -1)])
            offset.append(Fraction(0))
            ncols += 2

    def translate(coeffs: Sequence[Fraction]) -> tuple[dict[int, Fraction], Fraction]:
        out: dict[int, Fraction] = {}
        shift = Fraction(0)
        for j, a in enumerate(coeffs):
            if not a:
                continue
            shift += a * offset[j]
            for col, s in var_map[j]:
                out[col] = out.get(col, Fraction(0)) + s * a
        return out, shift

    cons: list[tuple[dict[int, Fraction], str, Fraction]] = []
    for con in lp.constraints:
        coeffs, shift = translate(con.coeffs)
        cons.append((coeffs, con.relation, con.rhs - shift))
    cons.extend(extra)

    m = len(cons)
    # columns: structural | slack/surplus | artificial
    nslack = sum(1 for _, rel, _ in cons if rel != EQ)
    total = ncols + nslack + m
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    art_cols: list[int] = []
    slack_idx = ncols
    for i, (coeffs, rel, rhs) in enumerate(cons):
        row = [Fraction(0)] * (total + 1)
        for col, a in coeffs.items():
            row[col] = a
        if rel == LE:
            row[slack_idx] = Fraction(1)
            slack_col, slack_idx = slack_idx, slack_idx + 1
        elif rel == GE:
            row[slack_idx] = Fraction(-1)
            slack_col, slack_idx = slack_idx, slack_idx + 1
        else:
            slack_col = None
        row[-1] = rhs
        if rhs < 0:
            row = [-x for x in row]
        art = ncols + nslack + i
        if slack_col is not None and row[slack_col] == 1:
            basis.append(slack_col)
        else:
            row[art] = Fraction(1)
            basis.append(art)
            art_cols.append(art)
        rows.append(row)

    tab = _Tableau(rows, basis, total)
    is_art = [False] * total
    for a in art_cols:
        is_art[a] = True

    if art_cols:
        phase1 = [Fraction(-1) if is_art[j] else Fraction(0) for j in range(total)]
        tab.optimize(phase1, [True] * total)
        infeas = sum((tab.rows[i][-1] for i, b in enumerate(tab.basis) if is_art[b]), Fraction(0))
        if infeas > 0:
            return LPResult(INFEASIBLE)
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if is_art[tab.basis[i]]:
                col = next((j for j in range(total) if not is_art[j] and tab.rows[i][j]), None)
                if col is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1

    sign = 1 if lp.sense == "max" else -1
    cost = [Fraction(0)] * total
    for j, c in enumerate(lp.objective):
        for col, s in var_map[j]:
            cost[col] += sign * s * c
    allowed = [not is_art[j] for j in range(total)]
    if not tab.optimize(cost, allowed):
        return LPResult(UNBOUNDED)

    y = [Fraction(0)] * total
    for i, b in enumerate(tab.basis):
        y[b] = tab.rows[i][-1]
    x = [offset[j] + sum((s * y[col] for col, s in var_map[j]), Fraction(0)) for j in range(n)]
    d = tab.reduced_costs(cost)
    reduced = [d[j] for j in range(total) if allowed[j]]
    return LPResult(OPTIMAL, lp.value_at(x), x, reduced)
