"""JSON formats for algebras, gradings and results."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ParseError
from .exactmath.rational import format_rat, to_rat
from .grading import Grading, Layer
from .liealg import LieAlgebra, validate


def algebra_to_json(g: LieAlgebra) -> dict:
    brackets = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            terms = [{"k": k + 1, "coeff": format_rat(c)} for k, c in g.sparse(i, j)]
            if terms:
                brackets.append({"i": i + 1, "j": j + 1, "terms": terms})
    return {"name": g.name, "dim": g.dim, "brackets": brackets}


def algebra_from_json(data: Any, check: bool = True) -> LieAlgebra:
    """Parse an algebra; with ``check`` the result must satisfy antisymmetry and Jacobi."""
    try:
        dim = int(data["dim"])
        name = str(data.get("name", ""))
        entries = []
        for b in data.get("brackets", []):
            i, j = int(b["i"]), int(b["j"])
            if not (1 <= i <= dim and 1 <= j <= dim) or i == j:
                raise ParseError(f"bad bracket indices ({i}, {j})")
            for t in b["terms"]:
                k = int(t["k"])
                if not 1 <= k <= dim:
                    raise ParseError(f"bad target index {k}")
                entries.append((i, j, k, to_rat(t["coeff"])))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed algebra: {exc}") from exc
    g = LieAlgebra.from_brackets(dim, entries, name=name)
    if check:
        v = validate(g)
        if not v.ok:
            raise ParseError(f"not a Lie algebra: {v.kind} violated at {v.witness}")
    return g


def grading_to_json(v: Grading) -> dict:
    return {"rank": v.rank,
            "layers": [{"weight": list(layer.weight), "basis": [[format_rat(x) for x in b] for b in layer.basis]}
                       for layer in v.layers]}


def grading_from_json(data: Any, carrier: LieAlgebra) -> Grading:
    try:
        rank = int(data["rank"])
        layers = tuple(Layer(tuple(int(x) for x in layer["weight"]),
                             tuple(tuple(to_rat(x) for x in b) for b in layer["basis"]))
                       for layer in data["layers"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed grading: {exc}") from exc
    return Grading(rank, layers, carrier)


def matrix_to_json(m) -> list:
    return [[format_rat(Fraction(x)) for x in row] for row in m]


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
