"""Maximal gradings and the enumeration of all torsion-free gradings."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactmath import matrix as M
from .exactmath.normalforms import is_saturated, lattice_key, snf
from .exactmath.poly import Poly, rational_roots
from .grading import (DISTINGUISHED, EQUIVALENT, UNDECIDED, GroupHom, Grading, find_equivalence, grading_type,
                      induced_grading, layer_isomorphisms, push_forward, universal_realization)
from .errors import FieldExtensionRequired
from .liealg import (LieAlgebra, centralizer, derivation_algebra, is_derivation, jordan_decompose,
                     minimal_polynomial)


def split_part(s: Sequence[Sequence[Fraction]]) -> M.Mat:
    """Rational split part of a semisimple map.

    Each rational eigenspace keeps its eigenvalue.  The primary component of
    the irrational residual of the minimal polynomial is scaled by the mean of
    its roots, which is the right answer when that residual is irreducible.
    """
    n = len(s)
    roots, residual = rational_roots(minimal_polynomial(s))
    blocks = [Poly([-r, 1]) for r in sorted(set(roots))]
    if residual.degree > 0:
        blocks.append(residual.monic())
    columns: list[list[Fraction]] = []
    values: list[Fraction] = []
    for p in blocks:
        kernel = M.nullspace(p.eval_matrix(s), cols=n)
        d = p.degree
        columns.extend(kernel)
        values.extend([-p.coeffs[d - 1] / d] * len(kernel))
    basis = M.transpose(columns)
    diag = [[values[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    return M.matmul(M.matmul(basis, diag), M.inverse(basis))


def _split_derivation(g: LieAlgebra, a: Sequence[Sequence[Fraction]]) -> M.Mat:
    s, _ = jordan_decompose(a)
    sp = split_part(s)
    if not is_derivation(g, sp):
        raise FieldExtensionRequired(rational_roots(minimal_polynomial(s))[1].monic())
    return sp


@dataclass(frozen=True)
class MaximalTorus:
    basis: tuple[tuple[tuple[Fraction, ...], ...], ...]
    derivations: tuple[tuple[tuple[Fraction, ...], ...], ...]


def maximal_torus(g: LieAlgebra) -> MaximalTorus:
    """Extend a split torus until every centralizer element's split semisimple part lies in it."""
    der = derivation_algebra(g)
    torus: list[M.Mat] = []
    while True:
        span = [M.flatten(t) for t in torus]
        extension = None
        for a in centralizer(der, torus):
            sp = _split_derivation(g, a)
            if any(M.flatten(sp)) and not M.in_span(span, M.flatten(sp)):
                extension = sp
                break
        if extension is None:
            break
        torus.append(extension)
    # certificate
    span = [M.flatten(t) for t in torus]
    for a in centralizer(der, torus):
        sp = _split_derivation(g, a)
        assert M.in_span(span, M.flatten(sp)), "torus maximality certificate failed"
    return MaximalTorus(tuple(tuple(tuple(r) for r in t) for t in torus),
                        tuple(tuple(tuple(r) for r in d) for d in der))


def maximal_grading(g: LieAlgebra) -> Grading:
    torus = maximal_torus(g)
    return universal_realization(induced_grading(g, torus.basis))


# ------------------------------------------------------------ quotients

@dataclass(frozen=True)
class Subgroup:
    rank: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def subgroup_rank(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class Quotient:
    subgroup: Subgroup
    projection: GroupHom
    grading: Grading


def weight_differences(w: Grading) -> list[tuple[int, ...]]:
    """Omega - Omega without zero, one of each +-pair (they span the same subgroups)."""
    out = []
    seen = set()
    weights = w.weights
    for i, a in enumerate(weights):
        for b in weights[i + 1:]:
            d = tuple(x - y for x, y in zip(b, a))
            neg = tuple(-x for x in d)
            if d not in seen and neg not in seen:
                seen.add(d)
                out.append(d)
    return out


def subgroup_spans(k: int, generators: Sequence[Sequence[int]]) -> set[tuple]:
    """HNF keys of all subgroups spanned by subsets of ``generators``."""
    start = lattice_key([], k)
    seen = {start}
    queue = deque([start])
    while queue:
        key = queue.popleft()
        for d in generators:
            new = lattice_key([list(r) for r in key] + [list(d)], k)
            if new not in seen:
                seen.add(new)
                queue.append(new)
    return seen


def quotient_projection(k: int, rows: Sequence[Sequence[int]]) -> GroupHom:
    """Z^k -> Z^k / <rows> ~ Z^(k-r) for a saturated lattice."""
    if not rows:
        return GroupHom.identity(k)
    s, _, v = snf([list(r) for r in rows])
    r = sum(1 for i in range(min(len(s), k)) if s[i][i])
    return GroupHom(tuple(tuple(v[c][t] for c in range(k)) for t in range(r, k)), k)


def torsionfree_quotients(w: Grading) -> list[Quotient]:
    k = w.rank
    keys = [key for key in subgroup_spans(k, weight_differences(w)) if is_saturated(key)]
    keys.sort(key=lambda key: (len(key), key))
    out = []
    for key in keys:
        proj = quotient_projection(k, key)
        grading = universal_realization(push_forward(w, proj))
        out.append(Quotient(Subgroup(k, key), proj, grading))
    return out


# ------------------------------------------------------------ classification

REPRESENTATIVE = "representative"


@dataclass(frozen=True)
class ClassifiedGrading:
    grading: Grading
    subgroup: Subgroup
    status: str
    family: int
    representative: Optional[int] = None
    hom: Optional[GroupHom] = None
    automorphism: Optional[tuple] = None
    positive: bool = False


@dataclass(frozen=True)
class Classification:
    algebra: LieAlgebra
    maximal: Grading
    items: tuple[ClassifiedGrading, ...]
    undecided_pairs: tuple[tuple[int, int], ...]

    @property
    def quotient_count(self) -> int:
        return len(self.items)

    @property
    def families(self) -> int:
        """Lower bound: gradings with no layer-dimension preserving isomorphism are inequivalent."""
        return len({c.family for c in self.items})

    @property
    def classes(self) -> int:
        """Upper bound: gradings not proven equivalent to an earlier class."""
        return sum(1 for c in self.items if c.status != EQUIVALENT)

    @property
    def positive(self) -> int:
        return sum(1 for c in self.items if c.status != EQUIVALENT and c.positive)

    @property
    def representatives(self) -> list[int]:
        return [i for i, c in enumerate(self.items) if c.status != EQUIVALENT]


def adapted_basis(w: Grading) -> list[list[Fraction]]:
    """The standard basis if every basis vector lies in a layer, else the layer bases."""
    n = w.carrier.dim
    std = [M.unit(n, i) for i in range(n)]
    if all(any(M.in_span(list(layer.basis), e) for layer in w.layers) for e in std):
        return std
    return [list(v) for layer in w.layers for v in layer.basis]


def classify_gradings(g: LieAlgebra, maximal: Optional[Grading] = None) -> Classification:
    from .positive import cone_is_empty

    w = maximal if maximal is not None else maximal_grading(g)
    basis = adapted_basis(w)
    quotients = torsionfree_quotients(w)
    items: list[ClassifiedGrading] = []
    family_reps: list[int] = []
    undecided: list[tuple[int, int]] = []
    for idx, q in enumerate(quotients):
        v = q.grading
        family = next((f for f, rep in enumerate(family_reps)
                       if _same_family(items[rep].grading, v)), None)
        if family is None:
            family = len(family_reps)
            family_reps.append(idx)
        positive = not cone_is_empty(v)
        status, rep_idx, hom, phi = REPRESENTATIVE, None, None, None
        pending = []
        for j, c in enumerate(items):
            if c.family != family or c.status == EQUIVALENT:
                continue
            res = find_equivalence(c.grading, v, basis)
            if res.status == EQUIVALENT:
                status, rep_idx, hom, phi = EQUIVALENT, j, res.hom, res.automorphism
                break
            if res.status == UNDECIDED:
                pending.append(j)
        if status != EQUIVALENT and pending:
            status = UNDECIDED
            undecided.extend((j, idx) for j in pending)
        items.append(ClassifiedGrading(v, q.subgroup, status, family, rep_idx, hom, phi, positive))
    return Classification(g, w, tuple(items), tuple(undecided))


def _same_family(v: Grading, w: Grading) -> bool:
    if v.rank != w.rank or grading_type(v) != grading_type(w):
        return False
    return next(layer_isomorphisms(v, w), None) is not None


__all__ = ["maximal_torus", "maximal_grading", "split_part", "Subgroup", "Quotient", "weight_differences",
           "subgroup_spans", "quotient_projection", "torsionfree_quotients", "ClassifiedGrading",
           "Classification", "classify_gradings", "adapted_basis", "REPRESENTATIVE", "EQUIVALENT",
           "UNDECIDED", "DISTINGUISHED"]
