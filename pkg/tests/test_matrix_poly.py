from fractions import Fraction as F

from hypothesis import assume, given, strategies as st

from lie_gradings.exactmath import matrix as M
from lie_gradings.exactmath.poly import Poly, poly_gcd, rational_roots, squarefree_part
from lie_gradings.exactmath.rational import format_rat, to_rat

import pytest

rats = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows, cols):
    return st.lists(st.lists(rats, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_rational_parsing_and_format():
    assert to_rat("3/6") == F(1, 2)
    assert to_rat(" -4 ") == -4
    assert format_rat(F(-2, 4)) == "-1/2"
    assert format_rat(F(6, 3)) == "2"
    with pytest.raises(TypeError):
        to_rat(0.5)
    with pytest.raises(TypeError):
        to_rat(True)


def test_nullspace_examples():
    assert M.nullspace(M.identity(3)) == []
    assert M.nullspace([[1, 1]]) == [[F(-1), F(1)]]


@given(st.integers(1, 4), st.integers(1, 6).flatmap(lambda c: st.tuples(st.just(c), matrices(4, c))))
def test_nullspace_property(_, data):
    cols, m = data
    null = M.nullspace(m, cols=cols)
    assert all(not any(M.matvec(m, x)) for x in null)
    assert M.rank(m) + len(null) == cols
    assert len(null) == 0 or M.rank(null) == len(null)


def test_nullspace_rank_three():
    # rows 3 and 4 are combinations of the first two plus one independent row
    m = [[1, 2, 0, 1, 0, 3], [0, 1, 1, 0, 2, 1], [1, 3, 1, 1, 2, 4], [0, 0, 0, 1, 1, 1]]
    assert M.rank(m) == 3
    null = M.nullspace(m)
    assert len(null) == 3
    assert all(not any(M.matvec(m, x)) for x in null)


@given(matrices(3, 3))
def test_inverse_and_det(m):
    assume(M.det(m) != 0)
    inv = M.inverse(m)
    assert M.matmul(m, inv) == M.identity(3)
    assert M.det(inv) == 1 / M.det(m)


@given(matrices(4, 3), matrices(4, 3))
def test_intersection_is_in_both(a, b):
    inter = M.intersect(a, b)
    assert all(M.in_span(a, v) and M.in_span(b, v) for v in inter)
    sa, sb = M.rank(a), M.rank(b)
    assert len(inter) == sa + sb - M.rank(a + b)


def test_rational_roots_examples():
    roots, res = rational_roots(Poly([-1, 0, 1]))
    assert sorted(roots) == [-1, 1] and res == Poly([1])
    roots, res = rational_roots(Poly([-2, 0, 1]))
    assert roots == [] and res == Poly([-2, 0, 1])
    roots, res = rational_roots(Poly([2, -1, -2, 1]))
    assert sorted(roots) == [-1, 1, 2] and res.degree == 0


def brute_force_roots(p, bound=6, den=6):
    found = set()
    for q in range(1, den + 1):
        for n in range(-bound * q, bound * q + 1):
            if p(F(n, q)) == 0:
                found.add(F(n, q))
    return found


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), max_size=4),
       st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_rational_roots_refactor(roots, extra):
    p = Poly.from_roots(roots) * Poly(extra + [1])
    found, residual = rational_roots(p)
    assert residual * Poly.from_roots(found) == p
    assert rational_roots(residual)[0] == []
    assert brute_force_roots(p) <= set(found) and set(roots) <= set(found)


def test_poly_printing_and_gcd():
    assert str(Poly([-1, -1, 1])) == "x^2 - x - 1"
    a = Poly.from_roots([1, 2, 2])
    b = Poly.from_roots([2, 3])
    assert poly_gcd(a, b) == Poly.from_roots([2])
    assert squarefree_part(a) == Poly.from_roots([1, 2])
