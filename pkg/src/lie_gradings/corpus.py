"""Built-in nilpotent Lie algebras of dimension at most 6.

Brackets are written in the condensed form ``"ab=c"`` for [Y_a, Y_b] = Y_c,
in a basis adapted to a maximal grading.  Algebras with an abelian factor
reuse the brackets of their nonabelian factor in a larger dimension.
"""
from __future__ import annotations

import re
from functools import lru_cache

from .errors import ParseError
from .liealg import LieAlgebra

_CONDENSED = {
    "L_3_2": (3, "12=3"),
    "L_4_3": (4, "12=3 13=4"),
    "L_5_4": (5, "41=5 23=5"),
    "L_5_5": (5, "13=4 14=5 32=5"),
    "L_5_6": (5, "12=3 13=4 14=5 23=5"),
    "L_5_7": (5, "12=3 13=4 14=5"),
    "L_5_8": (5, "12=3 14=5"),
    "L_5_9": (5, "12=3 23=4 13=5"),
    "L_6_10": (6, "23=4 51=6 24=6"),
    "L_6_11": (6, "12=3 13=5 15=6 23=6 24=6"),
    "L_6_12": (6, "23=4 24=5 31=6 25=6"),
    "L_6_13": (6, "13=4 14=5 32=5 15=6 42=6"),
    "L_6_14": (6, "12=3 13=4 14=5 23=5 25=6 43=6"),
    "L_6_15": (6, "12=3 13=4 14=5 23=5 15=6 24=6"),
    "L_6_16": (6, "12=3 13=4 14=5 25=6 43=6"),
    "L_6_17": (6, "21=3 23=4 24=5 13=6 25=6"),
    "L_6_18": (6, "12=3 13=4 14=5 15=6"),
    "L_6_19(-1)": (6, "12=3 14=5 25=6 43=6"),
    "L_6_20": (6, "12=3 14=5 15=6 23=6"),
    "L_6_21(-1)": (6, "12=3 23=4 13=5 14=6 25=6"),
    "L_6_22(0)": (6, "24=5 41=6 23=6"),
    "L_6_22(1)": (6, "12=3 45=6"),
    "L_6_23": (6, "12=3 14=5 15=6 42=6"),
    "L_6_24(0)": (6, "13=4 34=5 14=6 32=6"),
    "L_6_24(1)": (6, "12=3 23=5 24=5 13=6"),
    "L_6_25": (6, "12=3 13=4 15=6"),
    "L_6_26": (6, "12=3 24=5 14=6"),
    "L_6_27": (6, "12=3 13=4 25=6"),
    "L_6_28": (6, "12=3 23=4 13=5 15=6"),
}

# algebra with an abelian factor -> its nonabelian factor
_ABELIAN_FACTOR = {
    "L_4_2": "L_3_2",
    "L_5_2": "L_3_2",
    "L_5_3": "L_4_3",
    "L_6_2": "L_3_2",
    "L_6_3": "L_4_3",
    "L_6_4": "L_5_4",
    "L_6_5": "L_5_5",
    "L_6_6": "L_5_6",
    "L_6_7": "L_5_7",
    "L_6_8": "L_5_8",
    "L_6_9": "L_5_9",
}

_ABELIAN = {f"L_{n}_1": n for n in range(2, 7)}

_NAMES = (["L_2_1", "L_3_1", "L_3_2", "L_4_1", "L_4_2", "L_4_3", "L_5_1", "L_5_2", "L_5_3"]
          + [f"L_5_{i}" for i in range(4, 10)]
          + ["L_6_1", "L_6_2", "L_6_3"] + [f"L_6_{i}" for i in range(4, 19)]
          + ["L_6_19(-1)", "L_6_20", "L_6_21(-1)", "L_6_22(0)", "L_6_22(1)", "L_6_23", "L_6_24(0)", "L_6_24(1)",
             "L_6_25", "L_6_26", "L_6_27", "L_6_28"])

_TOKEN = re.compile(r"^(\d)(\d)=(-?)(\d)$")


def parse_condensed(dim: int, text: str, name: str = "") -> LieAlgebra:
    """Parse ``"12=3 13=4"`` (single-digit indices, 1-based) into a Lie algebra."""
    brackets = []
    for token in text.split():
        m = _TOKEN.match(token)
        if not m:
            raise ParseError(f"bad bracket token {token!r}")
        i, j, sign, k = int(m[1]), int(m[2]), m[3], int(m[4])
        brackets.append((i, j, k, -1 if sign else 1))
    return LieAlgebra.from_brackets(dim, brackets, labels=[f"Y{i + 1}" for i in range(dim)], name=name)


def names() -> list[str]:
    return list(_NAMES)


def normalize_name(name: str) -> str:
    """Accept ``L_6_22(1)``, ``L6,22(1)`` and ``L_{6,22}(1)`` spellings."""
    s = name.strip().replace("{", "").replace("}", "").replace(" ", "")
    m = re.match(r"^L_?(\d)[_,](\d+)(\(-?\d+\))?$", s)
    if not m:
        raise KeyError(name)
    return f"L_{m[1]}_{m[2]}{m[3] or ''}"


def get(name: str) -> LieAlgebra:
    return _build(normalize_name(name))


@lru_cache(maxsize=None)
def _build(key: str) -> LieAlgebra:
    if key in _ABELIAN:
        return parse_condensed(_ABELIAN[key], "", key)
    if key in _CONDENSED:
        dim, text = _CONDENSED[key]
        return parse_condensed(dim, text, key)
    if key in _ABELIAN_FACTOR:
        _, text = _CONDENSED[_ABELIAN_FACTOR[key]]
        return parse_condensed(int(key.split("_")[1]), text, key)
    raise KeyError(key)


def condensed(name: str) -> str:
    key = normalize_name(name)
    if key in _CONDENSED:
        return _CONDENSED[key][1]
    if key in _ABELIAN_FACTOR:
        return _CONDENSED[_ABELIAN_FACTOR[key]][1]
    if key in _ABELIAN:
        return ""
    raise KeyError(name)
