"""Depth-first branch and bound on the exact LP relaxation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .lp import INFEASIBLE, OPTIMAL, LinearProgram, simplex_solve


@dataclass
class IntegerProgram:
    lp: LinearProgram
    integral: list[bool] = field(default_factory=list)
    binary: list[bool] = field(default_factory=list)

    def __post_init__(self):
        n = self.lp.num_vars
        if not self.integral:
            self.integral = [True] * n
        if not self.binary:
            self.binary = [False] * n
        if len(self.integral) != n or len(self.binary) != n:
            raise ValueError("flag vectors must match the number of variables")
        lower, upper = list(self.lp.lower), list(self.lp.upper)
        for j, is_bin in enumerate(self.binary):
            if is_bin:
                self.integral[j] = True
                lower[j] = Fraction(0) if lower[j] is None else max(lower[j], Fraction(0))
                upper[j] = Fraction(1) if upper[j] is None else min(upper[j], Fraction(1))
        self.lp.lower, self.lp.upper = lower, upper


@dataclass
class ILPResult:
    status: str
    value: Optional[Fraction] = None
    point: Optional[list[int]] = None
    nodes: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def ilp_solve(ip: IntegerProgram, max_nodes: Optional[int] = None) -> ILPResult:
    """Optimal integral solution; branches on the lowest-index fractional variable.

    Every integral variable must carry finite bounds.  When the objective has
    integer coefficients on integral variables only, LP bounds are rounded
    before pruning.
    """
    lp = ip.lp
    for j, flag in enumerate(ip.integral):
        if flag and (lp.lower[j] is None or lp.upper[j] is None):
            raise ValueError(f"integral variable {j} needs finite bounds")
    maximize = lp.sense == "max"
    integral_objective = all(
        (c.denominator == 1 and ip.integral[j]) or c == 0 for j, c in enumerate(lp.objective))

    best_value: Optional[Fraction] = None
    best_point: Optional[list[Fraction]] = None
    nodes = 0
    stack = [(list(lp.lower), list(lp.upper))]
    while stack:
        lower, upper = stack.pop()
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise RuntimeError(f"branch and bound exceeded {max_nodes} nodes")
        sub = LinearProgram(lp.objective, lp.sense, lp.constraints, lower, upper)
        res = simplex_solve(sub)
        if res.status == INFEASIBLE:
            continue
        if res.status != OPTIMAL:
            raise ValueError("LP relaxation is unbounded; bound every variable")
        bound = res.value
        if integral_objective:
            bound = Fraction(math.floor(bound)) if maximize else Fraction(math.ceil(bound))
        if best_value is not None and (bound <= best_value if maximize else bound >= best_value):
            continue
        frac = next((j for j, x in enumerate(res.point)
                     if ip.integral[j] and x.denominator != 1), None)
        if frac is None:
            best_value, best_point = res.value, res.point
            continue
        x = res.point[frac]
        lo_u = list(upper)
        lo_u[frac] = Fraction(math.floor(x))
        hi_l = list(lower)
        hi_l[frac] = Fraction(math.ceil(x))
        # pushed last so the floor branch is explored first
        stack.append((hi_l, list(upper)))
        stack.append((list(lower), lo_u))
    if best_point is None:
        return ILPResult(INFEASIBLE, nodes=nodes)
    point = [int(x) if ip.integral[j] else x for j, x in enumerate(best_point)]
    return ILPResult(OPTIMAL, best_value, point, nodes)
