"""Exceptions raised by the grading pipeline."""
from __future__ import annotations


class LieGradingError(Exception):
    """Base class for domain errors."""


class NotNilpotent(LieGradingError, ValueError):
    """The lower central series stabilizes at a nonzero subspace."""

    def __init__(self, stable_dim: int):
        super().__init__(f"lower central series stabilizes at dimension {stable_dim}")
        self.stable_dim = stable_dim


class FieldExtensionRequired(LieGradingError):
    """A torus element has eigenvalues outside Q."""

    def __init__(self, polynomial):
        super().__init__(f"eigenvalues are not rational: irreducible factor {polynomial}")
        self.polynomial = polynomial


class NotCommuting(LieGradingError, ValueError):
    pass


class NotSemisimple(LieGradingError, ValueError):
    pass


class NotDirectSum(LieGradingError, ValueError):
    pass


class NotAGrading(LieGradingError, ValueError):
    pass


class TorsionInQuotient(LieGradingError):
    def __init__(self, factors):
        super().__init__(f"grading group has torsion (invariant factors {factors})")
        self.factors = factors


class DifferentAlgebra(LieGradingError, ValueError):
    pass


class InhomogeneousForm(LieGradingError, ValueError):
    def __init__(self, first, second):
        super().__init__(f"monomials {first} and {second} have different weights")
        self.pair = (first, second)


class EmptyCone(LieGradingError):
    pass


class ParseError(LieGradingError, ValueError):
    pass


class IndexOutOfRange(LieGradingError, IndexError):
    pass
