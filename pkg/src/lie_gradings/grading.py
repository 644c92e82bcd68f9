"""Gradings: construction, universal realizations, push-forwards and invariants.

A grading is a list of layers, each a weight vector plus a canonical (RREF)
basis of the layer subspace, written in the carrier algebra's input basis.
Layers are kept sorted lexicographically by weight.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterator, Optional, Sequence, Union

from .errors import (DifferentAlgebra, FieldExtensionRequired, NotAGrading, NotCommuting, NotDirectSum,
                     NotSemisimple, TorsionInQuotient)
from .exactmath import matrix as M
from .exactmath.normalforms import hnf, snf
from .exactmath.poly import rational_roots
from .liealg import LieAlgebra, bracket, is_automorphism, is_derivation, is_semisimple, minimal_polynomial

Weight = tuple


@dataclass(frozen=True)
class Layer:
    weight: Weight
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _canonical_layers(pairs) -> tuple[Layer, ...]:
    layers = []
    for weight, basis in pairs:
        rb = M.row_basis([list(v) for v in basis])
        if rb:
            layers.append(Layer(tuple(weight), tuple(tuple(v) for v in rb)))
    layers.sort(key=lambda layer: layer.weight)
    return tuple(layers)


def _add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class GradingCheck:
    ok: bool
    witness: Optional[tuple[Weight, Weight]] = None


def is_grading(g: LieAlgebra, layers: Sequence[tuple[Weight, Sequence[Sequence[Fraction]]]]) -> GradingCheck:
    """Check [V_a, V_b] ⊆ V_{a+b} for all layer pairs (zero when a+b is absent).

    Raises NotDirectSum if the layers do not decompose g.
    """
    pairs = [(tuple(w), [list(v) for v in basis]) for w, basis in layers]
    weights = [w for w, _ in pairs]
    if len(set(weights)) != len(weights):
        raise NotDirectSum("weights are not pairwise distinct")
    allvecs = [v for _, basis in pairs for v in basis]
    if len(allvecs) != g.dim or (allvecs and M.rank(allvecs) != g.dim):
        raise NotDirectSum(f"layers span {M.rank(allvecs) if allvecs else 0} of {g.dim} dimensions "
                           f"with {len(allvecs)} vectors")
    index = {w: basis for w, basis in pairs}
    for a_idx, (wa, ba) in enumerate(pairs):
        for wb, bb in pairs[a_idx:]:
            target = index.get(_add(wa, wb), [])
            for x in ba:
                for y in bb:
                    v = bracket(g, x, y)
                    if any(v) and not M.in_span(target, v):
                        return GradingCheck(False, (wa, wb))
    return GradingCheck(True)


@dataclass(frozen=True)
class Grading:
    """A Z^rank-grading of ``carrier``; validated on construction."""

    rank: int
    layers: tuple[Layer, ...]
    carrier: LieAlgebra = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "layers", _canonical_layers((layer.weight, layer.basis) for layer in self.layers))
        for layer in self.layers:
            if len(layer.weight) != self.rank or any(not isinstance(x, int) for x in layer.weight):
                raise ValueError(f"weight {layer.weight} is not an integer vector of length {self.rank}")
        check = is_grading(self.carrier, [(layer.weight, layer.basis) for layer in self.layers])
        if not check.ok:
            raise NotAGrading(f"bracket of layers {check.witness} leaves the summed layer")

    @classmethod
    def from_pairs(cls, carrier: LieAlgebra, rank: int, pairs) -> "Grading":
        """Build from (weight, basis vectors) pairs."""
        return cls(rank, tuple(Layer(tuple(int(x) for x in w), tuple(tuple(M.vec(v)) for v in b))
                               for w, b in pairs), carrier)

    @property
    def weights(self) -> list[Weight]:
        return [layer.weight for layer in self.layers]

    def layer(self, weight: Weight) -> Optional[Layer]:
        weight = tuple(weight)
        return next((layer for layer in self.layers if layer.weight == weight), None)

    def layer_dims(self) -> dict[Weight, int]:
        return {layer.weight: layer.dim for layer in self.layers}

    def partition(self) -> frozenset:
        """The layers as a set of subspaces, forgetting the weights."""
        return frozenset(layer.basis for layer in self.layers)


@dataclass(frozen=True)
class EigenGrading:
    """Simultaneous eigenspace decomposition of a split torus."""

    torus: tuple[tuple[tuple[Fraction, ...], ...], ...]
    layers: tuple[Layer, ...]
    carrier: LieAlgebra = field(repr=False)

    @property
    def weights(self) -> list[Weight]:
        return [layer.weight for layer in self.layers]


AnyGrading = Union[Grading, EigenGrading]


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism Z^k -> Z^m given by an m x k integer matrix."""

    matrix: tuple[tuple[int, ...], ...]
    source_rank: int

    @classmethod
    def from_rows(cls, rows, source_rank: Optional[int] = None) -> "GroupHom":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        k = source_rank if source_rank is not None else (len(rows[0]) if rows else 0)
        return cls(rows, k)

    @classmethod
    def identity(cls, k: int) -> "GroupHom":
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), k)

    @property
    def target_rank(self) -> int:
        return len(self.matrix)

    def __call__(self, weight: Weight) -> Weight:
        return tuple(sum(a * b for a, b in zip(row, weight)) for row in self.matrix)


def induced_grading(g: LieAlgebra, torus: Sequence[Sequence[Sequence]]) -> EigenGrading:
    torus = [M.mat(t) for t in torus]
    for i, a in enumerate(torus):
        if not is_derivation(g, a):
            raise ValueError(f"torus element {i} is not a derivation")
        for j in range(i):
            if not M.is_zero(M.commutator(a, torus[j])):
                raise NotCommuting(f"torus elements {j} and {i} do not commute")
    for i, a in enumerate(torus):
        if not is_semisimple(a):
            raise NotSemisimple(f"torus element {i} is not semisimple")
    spaces: list[tuple[tuple, list]] = [((), M.identity(g.dim))]
    for d in torus:
        refined = []
        for eig, basis in spaces:
            # D restricted to span(basis), in basis coordinates
            images = [M.matvec(d, v) for v in basis]
            r = M.transpose([M.coordinates(basis, im) for im in images])
            roots, residual = rational_roots(minimal_polynomial(r))
            if residual.degree > 0:
                raise FieldExtensionRequired(residual.monic())
            for lam in sorted(set(roots)):
                shifted = [[x - (lam if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(r)]
                for coeffs in [M.nullspace(shifted, cols=len(basis))]:
                    vecs = [[sum((c * v[t] for c, v in zip(cf, basis) if c), Fraction(0)) for t in range(g.dim)]
                            for cf in coeffs]
                    refined.append((eig + (lam,), vecs))
        spaces = refined
    layers = _canonical_layers(spaces)
    return EigenGrading(tuple(tuple(tuple(r) for r in t) for t in torus), layers, g)


def _first_pivot_key(layer: Layer):
    first = layer.basis[0]
    return (next(i for i, x in enumerate(first) if x), layer.basis)


def normalize_weights(carrier: LieAlgebra, pairs: Sequence[tuple[Weight, tuple]], rank: int) -> Grading:
    """Re-coordinatize a Z^rank-grading whose weights generate Z^rank canonically.

    Layers are ordered by the first pivot of their basis, and the weight
    matrix (one column per layer) is replaced by its Hermite normal form.
    """
    ordered = sorted(pairs, key=lambda p: _first_pivot_key(Layer(p[0], p[1])))
    if rank == 0:
        return Grading(0, tuple(Layer((), b) for _, b in ordered), carrier)
    w = [[p[0][i] for p in ordered] for i in range(rank)]
    h, _ = hnf(w)
    return Grading(rank, tuple(Layer(tuple(h[i][c] for i in range(rank)), ordered[c][1])
                               for c in range(len(ordered))), carrier)


def grading_relations(v: AnyGrading) -> list[tuple[int, int, int]]:
    """Triples (i, j, k), i <= j, with [V_i, V_j] != 0 and weight_k = weight_i + weight_j."""
    g = v.carrier
    layers = v.layers
    index = {layer.weight: t for t, layer in enumerate(layers)}
    rels = []
    for i, li in enumerate(layers):
        for j in range(i, len(layers)):
            lj = layers[j]
            if any(any(bracket(g, x, y)) for x in li.basis for y in lj.basis):
                k = index.get(_add(li.weight, lj.weight))
                if k is None:
                    raise NotAGrading(f"[V_{li.weight}, V_{lj.weight}] != 0 but the summed weight is absent")
                rels.append((i, j, k))
    return rels


def universal_realization(v: AnyGrading) -> Grading:
    layers = v.layers
    n = len(layers)
    rels = grading_relations(v)
    rows = []
    for i, j, k in rels:
        row = [0] * n
        row[i] += 1
        row[j] += 1
        row[k] -= 1
        rows.append(row)
    if rows:
        s, _, vmat = snf(rows)
        diag = [s[t][t] for t in range(min(len(s), n)) if s[t][t]]
        torsion = [d for d in diag if d != 1]
        if torsion:
            raise TorsionInQuotient(diag)
        r = len(diag)
        # x -> (x V) with the first r coordinates dropped kills exactly the row space of R
        proj = [[vmat[c][t] for c in range(n)] for t in range(r, n)]
    else:
        proj = [[int(i == j) for j in range(n)] for i in range(n)]
    k = len(proj)
    pairs = [(tuple(proj[t][c] for t in range(k)), layers[c].basis) for c in range(n)]
    return normalize_weights(v.carrier, pairs, k)


def push_forward(v: Grading, f: GroupHom) -> Grading:
    if f.source_rank != v.rank:
        raise ValueError(f"homomorphism source rank {f.source_rank} != grading rank {v.rank}")
    merged: dict[Weight, list] = {}
    for layer in v.layers:
        merged.setdefault(f(layer.weight), []).extend(layer.basis)
    return Grading(f.target_rank, tuple(Layer(w, tuple(b)) for w, b in merged.items()), v.carrier)


def grading_type(v: AnyGrading) -> tuple[int, ...]:
    dims = Counter(layer.dim for layer in v.layers)
    top = max(dims) if dims else 0
    return tuple(dims.get(d, 0) for d in range(1, top + 1))


def rank_and_type(v: AnyGrading) -> tuple[int, tuple[int, ...]]:
    return universal_realization(v).rank, grading_type(v)


@dataclass(frozen=True)
class ProductSplit:
    parts: tuple[tuple[Weight, ...], ...]
    ideals: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @property
    def split(self) -> bool:
        return len(self.parts) > 1


def detect_product(v: AnyGrading) -> ProductSplit:
    """Connected components of the weight graph; more than one part means a product."""
    n = len(v.layers)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, k in grading_relations(v):
        for a, b in ((i, j), (i, k)):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    comps: dict[int, list[int]] = {}
    for t in range(n):
        comps.setdefault(find(t), []).append(t)
    groups = sorted(comps.values(), key=lambda c: c[0])
    parts = tuple(tuple(v.layers[t].weight for t in grp) for grp in groups)
    ideals = tuple(tuple(vec for t in grp for vec in v.layers[t].basis) for grp in groups)
    return ProductSplit(parts, ideals)


# ---------------------------------------------------------------- equivalence

def independent_weights(weights: Sequence[Weight]) -> list[int]:
    """Indices of a maximal linearly independent prefix-greedy subset."""
    chosen: list[int] = []
    span: list[list[Fraction]] = []
    for i, w in enumerate(weights):
        vec = M.vec(w)
        if any(vec) and not M.in_span(span, vec):
            chosen.append(i)
            span.append(vec)
    return chosen


def hom_from_images(sources: Sequence[Weight], images: Sequence[Weight], source_rank: int) -> Optional[GroupHom]:
    """The unique linear map sending sources[i] to images[i], if it is integral.

    ``sources`` must span Q^source_rank.
    """
    idx = independent_weights(sources)
    if len(idx) != source_rank:
        raise ValueError("source weights do not span the grading group")
    if source_rank == 0:
        m = len(images[0]) if images else 0
        return GroupHom(tuple(() for _ in range(m)), 0)
    a = M.transpose([M.vec(sources[i]) for i in idx])
    b = M.transpose([M.vec(images[i]) for i in idx])
    f = M.matmul(b, M.inverse(a))
    if any(x.denominator != 1 for row in f for x in row):
        return None
    hom = GroupHom(tuple(tuple(int(x) for x in row) for row in f), source_rank)
    if any(hom(s) != tuple(im) for s, im in zip(sources, images)):
        return None
    return hom


def layer_isomorphisms(v: Grading, w: Grading) -> Iterator[GroupHom]:
    """Group isomorphisms sending v's weights bijectively onto w's, preserving layer dimensions."""
    if v.rank != w.rank or len(v.layers) != len(w.layers):
        return
    k = v.rank
    vdims = v.layer_dims()
    wdims = w.layer_dims()
    if sorted(vdims.values()) != sorted(wdims.values()):
        return
    vweights = v.weights
    idx = independent_weights(vweights)
    if len(idx) != k:
        raise ValueError("weights of v do not span its grading group")
    targets = w.weights
    seen = set()
    identity_first = [tuple(vweights[i] for i in idx)] if all(vweights[i] in wdims for i in idx) else []
    for images in identity_first + list(permutations(targets, k)):
        images = tuple(images)
        if images in seen:
            continue
        seen.add(images)
        if any(wdims[im] != vdims[vweights[i]] for i, im in zip(idx, images)):
            continue
        hom = hom_from_images([vweights[i] for i in idx], images, k)
        if hom is None:
            continue
        mapped = [hom(a) for a in vweights]
        if len(set(mapped)) != len(mapped) or any(wdims.get(m) != vdims[a] for a, m in zip(vweights, mapped)):
            continue
        yield hom


def _subspace_equal(a, b) -> bool:
    return [list(r) for r in M.row_basis([list(x) for x in a])] == [list(r) for r in M.row_basis([list(x) for x in b])]


def common_refinement_basis(v: AnyGrading, w: AnyGrading) -> Optional[list[list[Fraction]]]:
    """Basis adapted to both gradings, or None if their layers are not simultaneously adapted."""
    basis = []
    for lv in v.layers:
        for lw in w.layers:
            basis.extend(M.intersect(list(lv.basis), list(lw.basis)))
    if len(basis) != v.carrier.dim:
        return None
    return basis


def _solve_integer(e: list[list[int]], t: list[int]) -> Optional[list[int]]:
    """Integer solution of e x = t, or None."""
    n = len(e[0])
    s, u, vm = snf(e)
    ut = [sum(a * b for a, b in zip(row, t)) for row in u]
    y = [0] * n
    for i, val in enumerate(ut):
        d = s[i][i] if i < n else 0
        if d == 0:
            if val != 0:
                return None
        else:
            if val % d:
                return None
            y[i] = val // d
    return [sum(vm[r][c] * y[c] for c in range(n)) for r in range(n)]


def _solve_gf2(e: list[list[int]], t: list[int]) -> Optional[list[int]]:
    rows = [[x % 2 for x in r] + [b % 2] for r, b in zip(e, t)]
    n = len(e[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [(a ^ b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[n] for row in rows[r:]):
        return None
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x


def _factor_exponents(q: Fraction) -> dict[int, int]:
    out: dict[int, int] = {}
    for num, sgn in ((abs(q.numerator), 1), (q.denominator, -1)):
        p = 2
        while num > 1:
            while num % p == 0:
                out[p] = out.get(p, 0) + sgn
                num //= p
            p += 1
            if p * p > num and num > 1:
                out[num] = out.get(num, 0) + sgn
                break
    return out


def _scalings(equations: list[tuple[int, int, int, Fraction]], n: int) -> Optional[list[Fraction]]:
    """Rational lambdas with lambda_i * lambda_j / lambda_k = r for each (i, j, k, r)."""
    if not equations:
        return [Fraction(1)] * n
    e = []
    for i, j, k, _ in equations:
        row = [0] * n
        row[i] += 1
        row[j] += 1
        row[k] -= 1
        e.append(row)
    signs = [1 if r < 0 else 0 for *_, r in equations]
    sign_sol = _solve_gf2(e, signs)
    if sign_sol is None:
        return None
    lam = [Fraction(-1) if s else Fraction(1) for s in sign_sol]
    exps = [_factor_exponents(r) for *_, r in equations]
    for p in sorted({p for ex in exps for p in ex}):
        sol = _solve_integer(e, [ex.get(p, 0) for ex in exps])
        if sol is None:
            return None
        lam = [x * Fraction(p) ** s for x, s in zip(lam, sol)]
    return lam


def monomial_automorphism(v: Grading, w: Grading, f: GroupHom,
                          basis: Optional[Sequence[Sequence[Fraction]]] = None) -> Optional[M.Mat]:
    """Search Phi = permutation * diagonal in a layer-adapted basis with Phi(V_a) = W_f(a)."""
    g = v.carrier
    n = g.dim
    if basis is None:
        basis = common_refinement_basis(v, w)
        if basis is None:
            return None
    basis = [M.vec(b) for b in basis]
    p = M.transpose(basis)
    pinv = M.inverse(p)

    def layer_index(grading, vec):
        for t, layer in enumerate(grading.layers):
            if M.in_span(list(layer.basis), vec):
                return t
        return None

    vidx = [layer_index(v, b) for b in basis]
    widx = [layer_index(w, b) for b in basis]
    if None in vidx or None in widx:
        return None
    wpos = {layer.weight: t for t, layer in enumerate(w.layers)}
    allowed = []
    for i in range(n):
        target = wpos.get(f(v.layers[vidx[i]].weight))
        if target is None:
            return None
        allowed.append([j for j in range(n) if widx[j] == target])

    # structure constants in the adapted basis
    c = [[M.matvec(pinv, bracket(g, basis[i], basis[j])) for j in range(n)] for i in range(n)]
    nz = {(i, j, k): c[i][j][k] for i in range(n) for j in range(n) for k in range(n) if c[i][j][k]}
    sigma = [-1] * n
    used = [False] * n

    def consistent(i: int) -> bool:
        placed = [t for t in range(n) if sigma[t] >= 0]
        for a in placed:
            for b in placed:
                for k in placed:
                    if i in (a, b, k) and ((a, b, k) in nz) != ((sigma[a], sigma[b], sigma[k]) in nz):
                        return False
        return True

    def search(i: int):
        if i == n:
            eqs = [(a, b, k, val / nz[(sigma[a], sigma[b], sigma[k])])
                   for (a, b, k), val in nz.items() if a < b]
            lam = _scalings(eqs, n)
            if lam is None:
                return None
            mono = M.zeros(n, n)
            for a in range(n):
                mono[sigma[a]][a] = lam[a]
            return M.matmul(M.matmul(p, mono), pinv)
        options = sorted(allowed[i], key=lambda j: (j != i, j))
        for j in options:
            if used[j]:
                continue
            sigma[i] = j
            used[j] = True
            if consistent(i):
                res = search(i + 1)
                if res is not None:
                    return res
            sigma[i] = -1
            used[j] = False
        return None

    phi = search(0)
    if phi is None:
        return None
    if not verify_equivalence(v, w, f, phi):
        return None
    return phi


def verify_equivalence(v: Grading, w: Grading, f: GroupHom, phi: Sequence[Sequence[Fraction]]) -> bool:
    """Phi is an automorphism and Phi(V_a) = W_f(a) for every weight a."""
    if not is_automorphism(v.carrier, phi):
        return False
    for layer in v.layers:
        target = w.layer(f(layer.weight))
        if target is None:
            return False
        image = [M.matvec(phi, list(b)) for b in layer.basis]
        if not _subspace_equal(image, target.basis):
            return False
    return True


EQUIVALENT = "equivalent"
DISTINGUISHED = "distinguished"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class EquivalenceResult:
    status: str
    hom: Optional[GroupHom] = None
    automorphism: Optional[tuple[tuple[Fraction, ...], ...]] = None
    invariant: Optional[str] = None
    candidates: tuple[GroupHom, ...] = ()


def find_equivalence(v: Grading, w: Grading, basis: Optional[Sequence[Sequence[Fraction]]] = None
                     ) -> EquivalenceResult:
    """Decide equivalence of two universal realizations over the same algebra.

    Sound but incomplete: automorphisms are searched among monomial maps of a
    layer-adapted basis only, so failure to find one is reported as undecided.
    """
    if v.carrier != w.carrier:
        raise DifferentAlgebra("gradings live on different algebras")
    if v.rank != w.rank:
        return EquivalenceResult(DISTINGUISHED, invariant="rank")
    if grading_type(v) != grading_type(w):
        return EquivalenceResult(DISTINGUISHED, invariant="type")
    candidates = list(layer_isomorphisms(v, w))
    if not candidates:
        return EquivalenceResult(DISTINGUISHED, invariant="homomorphism")
    for f in candidates:
        phi = monomial_automorphism(v, w, f, basis)
        if phi is not None:
            return EquivalenceResult(EQUIVALENT, f, tuple(tuple(r) for r in phi))
    return EquivalenceResult(UNDECIDED, candidates=tuple(candidates))
