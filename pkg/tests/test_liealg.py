from fractions import Fraction as F
from itertools import product

from hypothesis import given, strategies as st

from lie_gradings import corpus
from lie_gradings.errors import NotNilpotent
from lie_gradings.exactmath import matrix as M
from lie_gradings.liealg import (LieAlgebra, bracket, centralizer, derivation_algebra, direct_sum, ad,
                                 generated_subalgebra, is_derivation, is_nilpotent, is_semisimple, jordan_decompose,
                                 lcs_adapted, lower_central_series, minimal_polynomial, validate)
from lie_gradings.exactmath.poly import Poly

import pytest

HEIS = LieAlgebra.from_brackets(3, {(1, 2): {3: 1}})


def jacobi_sum(g, x, y, z):
    a = bracket(g, x, bracket(g, y, z))
    b = bracket(g, y, bracket(g, z, x))
    c = bracket(g, z, bracket(g, x, y))
    return [p + q + r for p, q, r in zip(a, b, c)]


def test_heisenberg_is_valid():
    assert validate(HEIS).ok


def test_antisymmetry_violation():
    c = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    c[0][0][0] = 1
    v = validate(LieAlgebra(2, c))
    assert not v.ok and v.kind == "antisymmetry" and v.witness == (1, 1)


def test_shared_target_brackets_satisfy_jacobi():
    g = LieAlgebra.from_brackets(3, {(1, 2): {3: 1}, (1, 3): {3: 1}, (2, 3): {3: 1}})
    e = [M.unit(3, i) for i in range(3)]
    assert not any(jacobi_sum(g, *e))
    assert validate(g).ok


def test_jacobi_violation():
    g = LieAlgebra.from_brackets(3, {(1, 2): {3: 1}, (1, 3): {3: 1}, (2, 3): {1: 1}})
    e = [M.unit(3, i) for i in range(3)]
    assert jacobi_sum(g, *e) == [-1, 0, 0]
    v = validate(g)
    assert not v.ok and v.kind == "jacobi" and v.witness[:3] == (1, 2, 3)


def test_brackets_from_table():
    assert bracket(HEIS, M.unit(3, 0), M.unit(3, 1)) == M.unit(3, 2)
    l43 = corpus.get("L_4_3")
    assert bracket(l43, M.unit(4, 0), M.unit(4, 2)) == M.unit(4, 3)


@given(st.lists(st.fractions(max_denominator=3, min_value=-3, max_value=3), min_size=3, max_size=3))
def test_bracket_self_is_zero(x):
    assert not any(bracket(HEIS, x, x))


def brute_force_derivation_dim(g):
    """Independent count: rank of the linear map D -> Leibniz defect over all basis pairs."""
    n = g.dim
    rows = []
    for i, j in product(range(n), repeat=2):
        ei, ej = M.unit(n, i), M.unit(n, j)
        for k in range(n):
            row = []
            for p, q in product(range(n), repeat=2):
                d = [[F(int(r == p and s == q)) for s in range(n)] for r in range(n)]
                lhs = M.matvec(d, bracket(g, ei, ej))
                rhs = [a + b for a, b in zip(bracket(g, M.matvec(d, ei), ej), bracket(g, ei, M.matvec(d, ej)))]
                row.append(lhs[k] - rhs[k])
            rows.append(row)
    return n * n - M.rank(rows)


def test_derivation_dimensions():
    assert len(derivation_algebra(LieAlgebra.abelian(2))) == 4
    der = derivation_algebra(HEIS)
    assert len(der) == 6 == brute_force_derivation_dim(HEIS)


@pytest.mark.parametrize("name", ["L_4_3", "L_5_5", "L_6_10", "L_6_22(1)"])
def test_derivations_are_derivations_and_contain_inner(name):
    g = corpus.get(name)
    der = derivation_algebra(g)
    assert len(der) == brute_force_derivation_dim(g)
    assert all(is_derivation(g, d) for d in der)
    span = [M.flatten(d) for d in der]
    assert all(M.in_span(span, M.flatten(ad(g, M.unit(g.dim, i)))) for i in range(g.dim))


def test_centralizer():
    gl2 = derivation_algebra(LieAlgebra.abelian(2))
    assert centralizer(gl2, []) == gl2
    c = centralizer(gl2, [[[1, 0], [0, 2]]])
    assert len(c) == 2
    assert all(m[0][1] == 0 and m[1][0] == 0 for m in c)
    assert M.in_span([M.flatten(m) for m in c], [1, 0, 0, 2])


def test_jordan_examples():
    s, n = jordan_decompose([[1, 1], [0, 1]])
    assert s == M.identity(2) and n == [[0, 1], [0, 0]]
    d = [[2, 0, 0], [0, -1, 0], [0, 0, 2]]
    s, n = jordan_decompose(d)
    assert s == M.mat(d) and M.is_zero(n)
    rot = [[0, 1], [-1, 0]]
    s, n = jordan_decompose(rot)
    assert s == M.mat(rot) and M.is_zero(n)
    assert minimal_polynomial(rot) == Poly([1, 0, 1])


@given(st.lists(st.integers(-2, 2), min_size=3, max_size=3),
       st.lists(st.integers(-2, 2), min_size=3, max_size=3),
       st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_jordan_properties(eigs, upper, mix):
    # conjugate an upper-triangular matrix by a unimodular-ish change of basis
    a = [[eigs[0], upper[0], upper[1]], [0, eigs[1], upper[2]], [0, 0, eigs[2]]]
    p = [[1, mix[0], mix[1]], [0, 1, mix[2]], [0, 0, 1]]
    p = M.matmul([[1, 0, 0], [mix[3], 1, 0], [mix[4], mix[5], 1]], p)
    a = M.matmul(M.matmul(p, a), M.inverse(p))
    s, n = jordan_decompose(a)
    assert M.add(s, n) == a
    assert M.matmul(s, n) == M.matmul(n, s)
    assert M.is_zero(M.matmul(M.matmul(n, n), n))
    assert is_semisimple(s)


def test_lcs_degrees():
    assert lcs_adapted(LieAlgebra.abelian(3)).degrees == (1, 1, 1)
    assert lcs_adapted(corpus.get("L_4_3")).degrees == (1, 1, 2, 3)
    assert lcs_adapted(HEIS).degrees == (1, 1, 2)


@pytest.mark.parametrize("name", ["L_5_5", "L_6_13", "L_6_18", "L_6_24(0)"])
def test_lcs_properties(name):
    g = corpus.get(name)
    data = lcs_adapted(g)
    terms = lower_central_series(g)
    full = M.identity(g.dim)
    for t, nxt in zip(terms, terms[1:]):
        for x in full:
            for y in t:
                assert M.in_span([list(v) for v in nxt], bracket(g, x, y))
    assert list(data.degrees) == sorted(data.degrees)
    basis = [list(v) for v in data.adapted_basis]
    for depth, term in enumerate(terms[:-1], start=1):
        tail = [b for b, d in zip(basis, data.degrees) if d >= depth]
        assert M.row_basis(tail) == M.row_basis([list(v) for v in term])


def test_not_nilpotent():
    # [X1, X2] = X2 stabilizes at <X2>
    g = LieAlgebra.from_brackets(2, {(1, 2): {2: 1}})
    assert not is_nilpotent(g)
    with pytest.raises(NotNilpotent):
        lcs_adapted(g)


def test_direct_sum():
    g = direct_sum(HEIS, HEIS)
    assert g == corpus.get("L_6_22(1)")
    assert direct_sum(HEIS, LieAlgebra.abelian(0)) == HEIS
    assert validate(g).ok
    assert len(derivation_algebra(g)) >= 2 * len(derivation_algebra(HEIS))


def test_generated_subalgebra():
    assert len(generated_subalgebra(HEIS, [M.unit(3, 0), M.unit(3, 1)])) == 3
    assert len(generated_subalgebra(HEIS, [M.unit(3, 0), M.unit(3, 2)])) == 2
