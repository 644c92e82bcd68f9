from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from lie_gradings import corpus
from lie_gradings.enumeration import maximal_grading, torsionfree_quotients
from lie_gradings.exactmath import matrix as M
from lie_gradings.grading import GroupHom, push_forward
from lie_gradings.liealg import change_basis, generated_subalgebra
from lie_gradings.positive import (FAST_MODE, NoPositiveRealization, NotStratifiable, Stratification,
                                   heintze_derivation, heintze_from_realization, positive_cone, positive_realization,
                                   stratification)

from reference import TABLE2


def unit(n, *idx):
    return [M.unit(n, i - 1) for i in idx]


def span_eq(a, b):
    return M.row_basis([list(v) for v in a]) == M.row_basis([list(v) for v in b])


@pytest.mark.parametrize("name", corpus.names())
def test_stratifiable_matches_reference(name):
    g = corpus.get(name)
    s = stratification(g)
    assert isinstance(s, Stratification) == TABLE2[name][1]
    if isinstance(s, Stratification):
        v1 = s.grading.layer((1,))
        assert len(generated_subalgebra(g, [list(x) for x in v1.basis])) == g.dim
        assert [layer.weight for layer in s.grading.layers] == [(i,) for i in range(1, len(s.grading.layers) + 1)]


def test_stratification_examples():
    s = stratification(corpus.get("L_4_2"))
    assert span_eq(s.grading.layer((1,)).basis, unit(4, 1, 2, 4))
    assert span_eq(s.grading.layer((2,)).basis, unit(4, 3))
    bad = stratification(corpus.get("L_5_5"))
    assert isinstance(bad, NotStratifiable) and bad.certificate == (2, 3, 5)


@settings(max_examples=25)
@given(st.lists(st.integers(-2, 2), min_size=10, max_size=10), st.sampled_from(["L_4_3", "L_5_5", "L_5_9", "L_6_13"]))
def test_stratification_is_basis_independent(mix, name):
    g = corpus.get(name)
    n = g.dim
    it = iter(mix)
    p = M.identity(n)
    for i in range(n):
        for j in range(i + 1, n):
            x = next(it, 0)
            p = M.matmul(p, [[F(int(r == c)) + (x if (r, c) == (i, j) else 0) for c in range(n)] for r in range(n)])
    p = M.matmul(p, [list(reversed(row)) for row in M.identity(n)])
    h = change_basis(g, p)
    a, b = stratification(g), stratification(h)
    assert type(a) is type(b)
    if isinstance(a, Stratification):
        assert [layer.dim for layer in a.grading.layers] == [layer.dim for layer in b.grading.layers]


def brute_force_max_weight(w, bound):
    best = None
    for vec in product(range(-bound, bound + 1), repeat=w.rank):
        weights = [sum(a * b for a, b in zip(vec, alpha)) for alpha in w.weights]
        if min(weights) >= 1 and len(set(weights)) == len(weights):
            m = max(weights)
            best = m if best is None else min(best, m)
    return best


@pytest.mark.parametrize("name, expected", [("L_3_2", 3), ("L_4_2", 4), ("L_4_3", 4)])
def test_optimal_realization_matches_brute_force(name, expected):
    w = maximal_grading(corpus.get(name))
    r = positive_realization(w)
    assert r.max_weight == expected == brute_force_max_weight(w, 6)
    assert r.grading.partition() == w.partition()


def test_l42_realizations():
    w = maximal_grading(corpus.get("L_4_2"))
    fast = positive_realization(w, FAST_MODE)
    assert len(set(fast.weights)) == 4 and min(fast.weights) >= 1
    assert fast.max_weight >= positive_realization(w).max_weight


@pytest.mark.parametrize("name", ["L_5_8", "L_6_10", "L_6_22(1)"])
def test_cone_and_realization_agree(name):
    w = maximal_grading(corpus.get(name))
    for q in torsionfree_quotients(w):
        cone = positive_cone(q.grading)
        if cone.empty:
            with pytest.raises(NoPositiveRealization):
                positive_realization(q.grading, FAST_MODE)
            continue
        assert cone.contains(cone.interior_point())
        r = positive_realization(q.grading, FAST_MODE)
        assert cone.contains(r.w)
        assert len(set(r.weights)) == len(r.weights) and min(r.weights) >= 1
        assert r.grading.partition() == q.grading.partition()


def test_irredundant_rows_generate_same_cone():
    w = maximal_grading(corpus.get("L_6_10"))
    cone = positive_cone(w)
    assert cone.irredundant_rows() == ((-1, 2, 1), (0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_trivial_grading_has_no_realization():
    g = corpus.get("L_3_2")
    zero = push_forward(maximal_grading(g), GroupHom.from_rows([[0, 0]]))
    with pytest.raises(NoPositiveRealization):
        positive_realization(zero)
    with pytest.raises(NoPositiveRealization):
        positive_realization(zero, FAST_MODE)


def test_optimal_mode_refuses_large_inputs():
    w = maximal_grading(corpus.get("L_4_2"))
    with pytest.raises(ValueError):
        positive_realization(w, max_weights=3)
    with pytest.raises(ValueError):
        positive_realization(w, "greedy")


def test_heintze_examples():
    g = corpus.get("L_3_2")
    s = stratification(g)
    assert heintze_derivation(s.grading) == [[1, 0, 0], [0, 1, 0], [0, 0, 2]]
    r = positive_realization(maximal_grading(g))
    d = heintze_from_realization(r)
    assert sorted(d[i][i] for i in range(3)) == [1, 2, 3]
    w = maximal_grading(corpus.get("L_6_10"))
    d = heintze_derivation(w, [1, 1, 1])
    assert all(d[i][j] == 0 for i in range(6) for j in range(6) if i != j)
    assert sorted(d[i][i] for i in range(6)) == [1, 1, 1, 2, 2, 3]
    with pytest.raises(ValueError):
        heintze_derivation(w)
    with pytest.raises(NoPositiveRealization):
        heintze_derivation(w, [-1, 0, 0])
