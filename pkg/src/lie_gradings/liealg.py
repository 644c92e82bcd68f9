"""Lie algebras given by rational structure constants in a fixed basis.

Basis indices are 0-based internally.  ``structure[i][j][k]`` is the
coefficient of X_k in [X_i, X_j].  Linear maps act on column coordinate
vectors, so ``D[m][i]`` is the X_m-component of D(X_i).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from .exactmath import matrix as M
from .exactmath.poly import Poly, poly_lcm, squarefree_part
from .exactmath.rational import to_rat
from .errors import NotNilpotent

Vec = M.Vec
Mat = M.Mat


class LieAlgebra:
    __slots__ = ("dim", "structure", "labels", "name", "_sparse")

    def __init__(self, dim: int, structure: Sequence[Sequence[Sequence]], labels: Optional[Sequence[str]] = None,
                 name: str = ""):
        if len(structure) != dim or any(len(r) != dim or any(len(c) != dim for c in r) for r in structure):
            raise ValueError(f"structure tensor must have shape ({dim}, {dim}, {dim})")
        self.dim = dim
        self.structure = tuple(tuple(tuple(to_rat(x) for x in c) for c in r) for r in structure)
        self.labels = tuple(labels) if labels is not None else tuple(f"X{i + 1}" for i in range(dim))
        self.name = name
        self._sparse = {
            (i, j): tuple((k, x) for k, x in enumerate(self.structure[i][j]) if x)
            for i in range(dim) for j in range(dim)
        }

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]] | Iterable,
                      labels=None, name: str = "", one_based: bool = True) -> "LieAlgebra":
        """Build from [X_i, X_j] = sum c_k X_k entries; antisymmetric partners are filled in.

        ``brackets`` maps (i, j) to {k: c} or is an iterable of (i, j, k, c).
        """
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        off = 1 if one_based else 0
        items = []
        if isinstance(brackets, Mapping):
            for (i, j), terms in brackets.items():
                for k, coeff in terms.items():
                    items.append((i, j, k, coeff))
        else:
            items = list(brackets)
        for i, j, k, coeff in items:
            i, j, k = i - off, j - off, k - off
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise IndexError(f"basis index {idx + off} out of range 1..{dim}")
            coeff = to_rat(coeff)
            c[i][j][k] += coeff
            c[j][i][k] -= coeff
        return cls(dim, c, labels, name)

    @classmethod
    def abelian(cls, dim: int, name: str = "") -> "LieAlgebra":
        return cls(dim, [[[0] * dim for _ in range(dim)] for _ in range(dim)], name=name)

    def nonzero_brackets(self) -> list[tuple[int, int, list[tuple[int, Fraction]]]]:
        """(i, j, terms) for i < j with [X_i, X_j] != 0."""
        return [(i, j, list(self._sparse[i, j])) for i in range(self.dim) for j in range(i + 1, self.dim)
                if self._sparse[i, j]]

    def sparse(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        return self._sparse[i, j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.structure == other.structure

    def __hash__(self) -> int:
        return hash((self.dim, self.structure))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, name={self.name!r})"


@dataclass(frozen=True)
class Validation:
    ok: bool
    kind: Optional[str] = None  # "antisymmetry" | "jacobi"
    witness: tuple[int, ...] = ()  # 1-based indices


def validate(g: LieAlgebra) -> Validation:
    n = g.dim
    c = g.structure
    for i, j in product(range(n), repeat=2):
        if j < i:
            continue
        if any(c[i][j][k] + c[j][i][k] for k in range(n)):
            return Validation(False, "antisymmetry", (i + 1, j + 1))
    for i, j, k, l in product(range(n), repeat=4):
        total = Fraction(0)
        for m in range(n):
            total += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l]
        if total:
            return Validation(False, "jacobi", (i + 1, j + 1, k + 1, l + 1))
    return Validation(True)


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> Vec:
    if len(x) != g.dim or len(y) != g.dim:
        raise ValueError(f"vectors must have length {g.dim}")
    out = [Fraction(0)] * g.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            s = xi * yj
            for k, ck in g._sparse[i, j]:
                out[k] += s * ck
    return out


def ad(g: LieAlgebra, x: Sequence) -> Mat:
    """Matrix of y -> [x, y]."""
    cols = [bracket(g, x, M.unit(g.dim, j)) for j in range(g.dim)]
    return M.transpose(cols)


def bracket_spaces(g: LieAlgebra, a: Sequence[Vec], b: Sequence[Vec]) -> Mat:
    """Canonical basis of [span a, span b]."""
    return M.row_basis([v for x in a for y in b if any(v := bracket(g, x, y))])


def is_derivation(g: LieAlgebra, d: Sequence[Sequence[Fraction]]) -> bool:
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            ei, ej = M.unit(n, i), M.unit(n, j)
            lhs = M.matvec(d, bracket(g, ei, ej))
            rhs = [a + b for a, b in zip(bracket(g, M.matvec(d, ei), ej), bracket(g, ei, M.matvec(d, ej)))]
            if lhs != rhs:
                return False
    return True


def is_automorphism(g: LieAlgebra, phi: Sequence[Sequence[Fraction]]) -> bool:
    n = g.dim
    if M.det(phi) == 0:
        return False
    cols = [M.matvec(phi, M.unit(n, i)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if M.matvec(phi, bracket(g, M.unit(n, i), M.unit(n, j))) != bracket(g, cols[i], cols[j]):
                return False
    return True


def leibniz_rows(g: LieAlgebra) -> list[list[Fraction]]:
    """Linear system in the n*n entries of D (row-major) expressing D as a derivation."""
    n = g.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                # D[X_i, X_j]_k = sum_h c_ij^h D[k][h]
                for h, c in g._sparse[i, j]:
                    row[k * n + h] += c
                # [D X_i, X_j]_k = sum_m D[m][i] c_mj^k
                for m in range(n):
                    cm = g.structure[m][j][k]
                    if cm:
                        row[m * n + i] -= cm
                    cm = g.structure[i][m][k]
                    if cm:
                        row[m * n + j] -= cm
                if any(row):
                    rows.append(row)
    return rows


def derivation_algebra(g: LieAlgebra) -> list[Mat]:
    n = g.dim
    basis = M.nullspace(leibniz_rows(g), cols=n * n)
    return [M.unflatten(v, n, n) for v in basis]


def centralizer(ambient: Sequence[Mat], b: Sequence[Mat]) -> list[Mat]:
    """Basis of {A in span(ambient) : AB = BA for all B in b}."""
    if not b:
        return [M.copy(a) for a in ambient]
    if not ambient:
        return []
    cols = []
    for a in ambient:
        col = []
        for bm in b:
            col.extend(M.flatten(M.commutator(a, bm)))
        cols.append(col)
    system = M.transpose(cols)
    sols = M.nullspace(system, cols=len(ambient))
    return [M.lincomb(s, ambient) for s in sols]


def minimal_polynomial(a: Sequence[Sequence[Fraction]]) -> Poly:
    """Monic minimal polynomial as the lcm of Krylov annihilators of e_1, e_2, ..."""
    n = len(a)
    result = Poly([1])
    for i in range(n):
        krylov = [M.unit(n, i)]
        while True:
            nxt = M.matvec(a, krylov[-1])
            coeffs = M.coordinates(krylov, nxt)
            if coeffs is not None:
                # A^d v = sum c_t A^t v
                local = Poly([-c for c in coeffs] + [1])
                result = poly_lcm(result, local)
                break
            krylov.append(nxt)
    return result


def is_semisimple(a: Sequence[Sequence[Fraction]]) -> bool:
    p = minimal_polynomial(a)
    return squarefree_part(p) == p


def is_nilpotent_map(a: Sequence[Sequence[Fraction]]) -> bool:
    p = minimal_polynomial(a)
    return p.coeffs[:-1] == tuple(Fraction(0) for _ in p.coeffs[:-1])


def jordan_decompose(a: Sequence[Sequence[Fraction]]) -> tuple[Mat, Mat]:
    """Additive Jordan-Chevalley decomposition A = S + N over Q.

    S is obtained by Newton iteration on the square-free part of the minimal
    polynomial, so it is a polynomial in A.
    """
    a = M.copy(a)
    p = squarefree_part(minimal_polynomial(a))
    dp = p.derivative()
    s = M.copy(a)
    while True:
        ps = p.eval_matrix(s)
        if M.is_zero(ps):
            break
        s = M.sub(s, M.matmul(ps, M.inverse(dp.eval_matrix(s))))
    return s, M.sub(a, s)


@dataclass(frozen=True)
class LcsData:
    terms: tuple[tuple[tuple[Fraction, ...], ...], ...]
    adapted_basis: tuple[tuple[Fraction, ...], ...]
    degrees: tuple[int, ...]
    # columns are the adapted basis vectors in input coordinates
    change_of_basis: tuple[tuple[Fraction, ...], ...] = field(repr=False, default=())


def lower_central_series(g: LieAlgebra) -> list[Mat]:
    """Canonical bases of g^(1) ⊃ g^(2) ⊃ ... until the series stabilizes."""
    full = M.identity(g.dim)
    terms = [full]
    while True:
        nxt = bracket_spaces(g, full, terms[-1])
        if len(nxt) == len(terms[-1]):
            return terms
        terms.append(nxt)
        if not nxt:
            return terms


def lcs_adapted(g: LieAlgebra) -> LcsData:
    terms = lower_central_series(g)
    if terms[-1]:
        raise NotNilpotent(len(terms[-1]))
    nonzero = terms[:-1]
    blocks: list[list[Vec]] = []
    for depth in range(len(nonzero) - 1, -1, -1):
        deeper = nonzero[depth + 1] if depth + 1 < len(nonzero) else []
        span = [list(v) for v in deeper]
        comp = []
        for v in nonzero[depth]:
            if not M.in_span(span, v):
                span.append(list(v))
                comp.append(list(v))
        blocks.append(comp)
    blocks.reverse()
    basis = [v for blk in blocks for v in blk]
    degrees = [d + 1 for d, blk in enumerate(blocks) for _ in blk]
    p = M.transpose(basis) if basis else []
    freeze = lambda vs: tuple(tuple(v) for v in vs)  # noqa: E731
    return LcsData(tuple(freeze(t) for t in terms), freeze(basis), tuple(degrees), freeze(p))


def is_nilpotent(g: LieAlgebra) -> bool:
    return not lower_central_series(g)[-1]


def change_basis(g: LieAlgebra, p: Sequence[Sequence[Fraction]], labels=None) -> LieAlgebra:
    """Structure constants in the basis given by the columns of p."""
    n = g.dim
    pinv = M.inverse(p)
    cols = [[p[r][i] for r in range(n)] for i in range(n)]
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = M.matvec(pinv, bracket(g, cols[i], cols[j]))
            c[i][j] = v
            c[j][i] = [-x for x in v]
    return LieAlgebra(n, c, labels, g.name)


def restrict(g: LieAlgebra, basis: Sequence[Sequence[Fraction]], name: str = "") -> LieAlgebra:
    """Structure constants of the subalgebra spanned by ``basis`` (must be closed)."""
    m = len(basis)
    c = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            v = bracket(g, basis[i], basis[j])
            coords = M.coordinates(basis, v)
            if coords is None:
                raise ValueError("basis does not span a subalgebra")
            c[i][j] = coords
            c[j][i] = [-x for x in coords]
    return LieAlgebra(m, c, name=name)


def generated_subalgebra(g: LieAlgebra, vectors: Sequence[Sequence[Fraction]]) -> Mat:
    """Canonical basis of the subalgebra generated by ``vectors``."""
    span = M.row_basis(vectors)
    while True:
        new = M.row_basis(span + [v for x in span for y in span if any(v := bracket(g, x, y))])
        if len(new) == len(span):
            return new
        span = new


def direct_sum(g1: LieAlgebra, g2: LieAlgebra, name: str = "") -> LieAlgebra:
    n1, n2 = g1.dim, g2.dim
    n = n1 + n2
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            for k, x in g1._sparse[i, j]:
                c[i][j][k] = x
    for i in range(n2):
        for j in range(n2):
            for k, x in g2._sparse[i, j]:
                c[n1 + i][n1 + j][n1 + k] = x
    return LieAlgebra(n, c, name=name or (f"{g1.name}+{g2.name}" if g1.name or g2.name else ""))
