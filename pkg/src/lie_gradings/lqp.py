"""Weights of left-invariant forms and the optimization of delta N_min(h) / Q."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import EmptyCone, IndexOutOfRange, InhomogeneousForm, ParseError
from .exactmath import matrix as M
from .exactmath.lp import EQ, GE, LE, LinearProgram, simplex_solve
from .exactmath.rational import format_rat, to_rat
from .grading import Grading
from .positive import positive_cone

Monomial = tuple[tuple[int, ...], Fraction]
Form = tuple[Monomial, ...]


@dataclass(frozen=True)
class FormBasis:
    """Forms of one degree; each monomial is (ascending 1-based indices, coefficient)."""

    degree: int
    forms: tuple[Form, ...]

    def __post_init__(self):
        for form in self.forms:
            if not form:
                raise ParseError("empty form")
            for idx, _ in form:
                if len(idx) != self.degree:
                    raise ParseError(f"monomial {idx} does not have degree {self.degree}")
                if any(a >= b for a, b in zip(idx, idx[1:])):
                    raise ParseError(f"indices {idx} are not strictly ascending")

    @classmethod
    def constant(cls) -> "FormBasis":
        return cls(0, (((( ), Fraction(1)),),))

    @classmethod
    def from_json(cls, data) -> "FormBasis":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            forms = tuple(tuple((tuple(int(i) for i in m["indices"]), to_rat(m.get("coeff", 1))) for m in form)
                          for form in data["forms"])
            return cls(int(data["degree"]), forms)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed form basis: {exc}") from exc

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "forms": [[{"indices": list(idx), "coeff": format_rat(c)} for idx, c in form]
                          for form in self.forms]}


def _index_weights(w: Grading) -> list[Optional[tuple[int, ...]]]:
    n = w.carrier.dim
    out: list[Optional[tuple[int, ...]]] = []
    for i in range(n):
        e = M.unit(n, i)
        out.append(next((layer.weight for layer in w.layers if M.in_span(list(layer.basis), e)), None))
    return out


def form_weight(w: Grading, form: Form, _cache: Optional[list] = None) -> tuple[int, ...]:
    weights = _cache if _cache is not None else _index_weights(w)
    n = len(weights)
    result = None
    first = None
    for idx, _ in form:
        total = [0] * w.rank
        for i in idx:
            if not 1 <= i <= n:
                raise IndexOutOfRange(f"index {i} outside 1..{n}")
            wi = weights[i - 1]
            if wi is None:
                raise ValueError(f"basis vector {i} does not lie in a single layer")
            total = [a + b for a, b in zip(total, wi)]
        total = tuple(total)
        if result is None:
            result, first = total, idx
        elif total != result:
            raise InhomogeneousForm(first, idx)
    return result if result is not None else tuple([0] * w.rank)


def homogeneous_dimension(w: Grading, a: Sequence) -> Fraction:
    a = [to_rat(x) for x in a]
    return sum((layer.dim * sum((x * y for x, y in zip(a, layer.weight)), Fraction(0)) for layer in w.layers),
               Fraction(0))


@dataclass(frozen=True)
class BoundResult:
    value: Fraction
    maximizer: tuple[Fraction, ...]
    attained: bool


def bound_at(w: Grading, e_prev: FormBasis, e_cur: FormBasis, a: Sequence) -> Fraction:
    """delta N_min(h) / Q at the projection a."""
    a = [to_rat(x) for x in a]
    cache = _index_weights(w)
    dot = lambda n: sum((x * y for x, y in zip(a, n)), Fraction(0))  # noqa: E731
    low = min(dot(form_weight(w, f, cache)) for f in e_cur.forms)
    high = max(dot(form_weight(w, f, cache)) for f in e_prev.forms)
    return (low - high) / homogeneous_dimension(w, a)


def optimize_bound(w: Grading, e_prev: Optional[FormBasis], e_cur: FormBasis) -> BoundResult:
    if e_prev is None:
        if e_cur.degree != 1:
            raise ValueError("the previous form basis is required in degree > 1")
        e_prev = FormBasis.constant()
    cone = positive_cone(w)
    if cone.empty:
        raise EmptyCone("the grading has no positive realization")
    k = w.rank
    cache = _index_weights(w)
    cur = [form_weight(w, f, cache) for f in e_cur.forms]
    prev = [form_weight(w, f, cache) for f in e_prev.forms]
    # variables: a_1..a_k, x, y
    lp = LinearProgram(tuple([0] * k + [1, -1]), "max")
    for n in cur:
        lp.add(list(n) + [-1, 0], GE, 0)
    for n in prev:
        lp.add(list(n) + [0, -1], LE, 0)
    q = [sum(layer.dim * layer.weight[t] for layer in w.layers) for t in range(k)]
    lp.add(q + [0, 0], EQ, 1)
    for n in cone.rows:
        lp.add(list(n) + [0, 0], GE, 0)
    res = simplex_solve(lp)
    if not res.optimal:
        raise EmptyCone(f"bound program is {res.status}")
    a = tuple(res.point[:k])
    return BoundResult(res.value, a, cone.contains(a))
