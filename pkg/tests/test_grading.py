from itertools import product

import pytest
from hypothesis import given, strategies as st

from lie_gradings import corpus
from lie_gradings.enumeration import maximal_grading, torsionfree_quotients
from lie_gradings.errors import (DifferentAlgebra, FieldExtensionRequired, NotAGrading, NotCommuting,
                                 NotDirectSum, NotSemisimple)
from lie_gradings.exactmath import matrix as M
from lie_gradings.grading import (DISTINGUISHED, EQUIVALENT, GroupHom, Grading, detect_product, find_equivalence,
                                  induced_grading, is_grading, push_forward, rank_and_type, universal_realization,
                                  verify_equivalence)
from lie_gradings.liealg import LieAlgebra, bracket, restrict

HEIS = LieAlgebra.from_brackets(3, {(1, 2): {3: 1}})
L42 = corpus.get("L_4_2")


def unit(n, *idx):
    return [M.unit(n, i - 1) for i in idx]


def diag(*xs):
    return [[x if i == j else 0 for j in range(len(xs))] for i, x in enumerate(xs)]


def brute_is_grading(g, layers):
    index = {}
    for w, basis in layers:
        for v in basis:
            index.setdefault(tuple(w), []).append(list(v))
    for (a, ba), (b, bb) in product(index.items(), repeat=2):
        target = index.get(tuple(x + y for x, y in zip(a, b)), [])
        for x, y in product(ba, bb):
            z = bracket(g, x, y)
            if any(z) and not M.in_span(target, z):
                return False
    return True


def test_induced_grading_heisenberg():
    e = induced_grading(HEIS, [diag(1, 0, 1), diag(0, 1, 1)])
    assert e.weights == [(0, 1), (1, 0), (1, 1)]
    assert [layer.basis for layer in e.layers] == [tuple(map(tuple, unit(3, i))) for i in (2, 1, 3)]


def test_induced_grading_errors():
    with pytest.raises(ValueError):
        induced_grading(HEIS, [diag(1, 1, 1)])
    with pytest.raises(NotCommuting):
        induced_grading(LieAlgebra.abelian(2), [diag(1, 0), [[0, 1], [1, 0]]])
    with pytest.raises(NotSemisimple):
        induced_grading(LieAlgebra.abelian(2), [[[0, 1], [0, 0]]])
    with pytest.raises(FieldExtensionRequired) as info:
        induced_grading(LieAlgebra.abelian(2), [[[0, 1], [1, 1]]])
    assert str(info.value.polynomial) == "x^2 - x - 1"


def test_is_grading_examples():
    assert is_grading(HEIS, [((1,), unit(3, 1, 2)), ((2,), unit(3, 3))]).ok
    bad = is_grading(HEIS, [((1,), unit(3, 1, 2)), ((3,), unit(3, 3))])
    assert not bad.ok and bad.witness == ((1,), (1,))
    with pytest.raises(NotDirectSum):
        is_grading(HEIS, [((1,), unit(3, 1, 2)), ((2,), unit(3, 2))])
    with pytest.raises(NotAGrading):
        Grading.from_pairs(HEIS, 1, [((1,), unit(3, 1, 2)), ((3,), unit(3, 3))])


def test_universal_realization_example():
    v = Grading.from_pairs(L42, 1, [((2,), unit(4, 1, 2)), ((4,), unit(4, 3, 4))])
    u = universal_realization(v)
    assert u.rank == 1
    assert u.layer_dims() == {(1,): 2, (2,): 2}
    assert universal_realization(u) == u


def test_maximal_grading_l42():
    w = maximal_grading(L42)
    assert w.rank == 3
    by_vector = {layer.basis[0]: layer.weight for layer in w.layers}
    y = [tuple(v) for v in unit(4, 1, 2, 3, 4)]
    assert by_vector == {y[0]: (1, 0, 0), y[1]: (0, 1, 0), y[2]: (1, 1, 0), y[3]: (0, 0, 1)}
    assert rank_and_type(w) == (3, (4,))


def test_push_forward():
    w = maximal_grading(L42)
    assert push_forward(w, GroupHom.identity(3)) == w
    ones = push_forward(w, GroupHom.from_rows([[1, 1, 1]]))
    assert ones.layer_dims() == {(1,): 3, (2,): 1}
    assert M.row_basis([list(v) for v in ones.layer((1,)).basis]) == M.row_basis(unit(4, 1, 2, 4))
    zero = push_forward(w, GroupHom.from_rows([[0, 0, 0]]))
    assert zero.layer_dims() == {(0,): 4}
    assert rank_and_type(zero) == (0, (0, 0, 0, 1))
    with pytest.raises(ValueError):
        push_forward(w, GroupHom.identity(2))


def test_heisenberg_invariants():
    w = maximal_grading(HEIS)
    assert rank_and_type(w) == (2, (3,))
    assert not detect_product(w).split


def test_detect_product_heisenberg_squared():
    g = corpus.get("L_6_22(1)")
    split = detect_product(maximal_grading(g))
    assert split.split and len(split.parts) == 2
    for ideal in split.ideals:
        h = restrict(g, [list(v) for v in ideal])
        assert h.dim == 3 and rank_and_type(maximal_grading(h)) == (2, (3,))
    assert detect_product(maximal_grading(LieAlgebra.abelian(2))).split


def quotient(w, rows):
    return universal_realization(push_forward(w, GroupHom.from_rows(rows)))


def test_equivalence_swap():
    w = maximal_grading(L42)
    kill_e1 = quotient(w, [[0, 1, 0], [0, 0, 1]])
    kill_e2 = quotient(w, [[1, 0, 0], [0, 0, 1]])
    assert kill_e1 != kill_e2
    res = find_equivalence(kill_e1, kill_e2)
    assert res.status == EQUIVALENT
    assert verify_equivalence(kill_e1, kill_e2, res.hom, res.automorphism)
    assert find_equivalence(w, w).status == EQUIVALENT


def test_equivalence_distinguished_by_type():
    a = universal_realization(Grading.from_pairs(L42, 1, [((1,), unit(4, 1, 2)), ((2,), unit(4, 3, 4))]))
    b = universal_realization(Grading.from_pairs(L42, 1, [((1,), unit(4, 1, 2, 4)), ((2,), unit(4, 3))]))
    assert rank_and_type(a) == (1, (0, 2)) and rank_and_type(b) == (1, (1, 0, 1))
    res = find_equivalence(a, b)
    assert res.status == DISTINGUISHED and res.invariant == "type"
    with pytest.raises(DifferentAlgebra):
        find_equivalence(a, maximal_grading(HEIS))


@pytest.mark.parametrize("name", ["L_4_2", "L_5_4", "L_6_10", "L_6_19(-1)"])
def test_quotients_are_gradings(name):
    for q in torsionfree_quotients(maximal_grading(corpus.get(name))):
        layers = [(layer.weight, layer.basis) for layer in q.grading.layers]
        assert brute_is_grading(q.grading.carrier, layers)


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_push_forward_of_maximal_is_grading(row):
    v = push_forward(maximal_grading(L42), GroupHom.from_rows([row]))
    assert brute_is_grading(L42, [(layer.weight, layer.basis) for layer in v.layers])
    assert sum(layer.dim for layer in v.layers) == 4
