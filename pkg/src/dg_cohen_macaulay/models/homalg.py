"""
Graded presented modules, maps between them and bounded cochain complexes.

All modules are presentations over the polynomial ring P. A module over R = P/I carries
the relations I·eⱼ explicitly. Matrices are tuples of columns, one column per source
generator, each column a tuple of polynomials indexed by target generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from src.dg_cohen_macaulay.errors import StructuralError
from src.dg_cohen_macaulay.models.algebra import Ideal, Polynomial, PolynomialRing

Column = Tuple[Polynomial, ...]
Matrix = Tuple[Column, ...]


def zero_matrix(ring: PolynomialRing, source_rank: int, target_rank: int) -> Matrix:
    zero = ring.zero()
    return tuple(tuple(zero for _ in range(target_rank)) for _ in range(source_rank))


def matrix_is_zero(matrix: Matrix) -> bool:
    return all(entry.is_zero() for column in matrix for entry in column)


@dataclass(frozen=True)
class PresentedModule:
    """Cokernel of a relation matrix on free generators of the given degrees."""
    ring: PolynomialRing
    degrees: Tuple[int, ...]
    relations: Matrix = ()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        columns = tuple(tuple(col) for col in self.relations)
        for col in columns:
            if len(col) != len(self.degrees):
                raise StructuralError(
                    f"Relation column has {len(col)} entries for {len(self.degrees)} generators"
                )
            for entry in col:
                if entry.ring != self.ring:
                    raise StructuralError("Relation entries belong to a different ring")
        object.__setattr__(self, "relations",
                           tuple(col for col in columns if not all(e.is_zero() for e in col)))

    @classmethod
    def free(cls, ring: PolynomialRing, degrees: Sequence[int]) -> 'PresentedModule':
        return cls(ring, tuple(degrees), ())

    @classmethod
    def zero(cls, ring: PolynomialRing) -> 'PresentedModule':
        return cls(ring, (), ())

    @classmethod
    def cyclic(cls, ring: PolynomialRing, ideal: Ideal, degree: int = 0) -> 'PresentedModule':
        """The module P/ideal generated in the given degree."""
        return cls(ring, (degree,), tuple((g,) for g in ideal.generators))

    @property
    def rank(self) -> int:
        """Number of generators of the presentation."""
        return len(self.degrees)

    @property
    def is_free(self) -> bool:
        return not self.relations

    @property
    def is_homogeneous(self) -> bool:
        for col in self.relations:
            degrees = {sum(mono) + self.degrees[i]
                       for i, entry in enumerate(col) for mono in entry._terms}
            if len(degrees) > 1:
                return False
        return True

    def over_quotient(self, ideal: Ideal) -> 'PresentedModule':
        """Append the relations ideal·eⱼ so the module is a P/ideal-module."""
        zero = self.ring.zero()
        extra = []
        for j in range(self.rank):
            for g in ideal.generators:
                extra.append(tuple(g if i == j else zero for i in range(self.rank)))
        return PresentedModule(self.ring, self.degrees, self.relations + tuple(extra))

    def direct_sum(self, other: 'PresentedModule') -> 'PresentedModule':
        if other.ring != self.ring:
            raise StructuralError("Direct sum of modules over different rings")
        zero = self.ring.zero()
        left = tuple(col + tuple(zero for _ in range(other.rank)) for col in self.relations)
        right = tuple(tuple(zero for _ in range(self.rank)) + col for col in other.relations)
        return PresentedModule(self.ring, self.degrees + other.degrees, left + right)

    def twist(self, amount: int) -> 'PresentedModule':
        """Shift every generator degree by ``amount``."""
        return PresentedModule(self.ring, tuple(d + amount for d in self.degrees), self.relations)

    def to_dict(self) -> Dict:
        return {
            "degrees": list(self.degrees),
            "relations": [[str(e) for e in col] for col in self.relations],
        }


@dataclass(frozen=True)
class ModuleMap:
    """A degree-0 homomorphism given on generators."""
    source: PresentedModule
    target: PresentedModule
    matrix: Matrix

    def __post_init__(self):
        matrix = tuple(tuple(col) for col in self.matrix)
        if len(matrix) != self.source.rank:
            raise StructuralError(
                f"Map has {len(matrix)} columns for {self.source.rank} source generators"
            )
        for col in matrix:
            if len(col) != self.target.rank:
                raise StructuralError(
                    f"Map column has {len(col)} entries for {self.target.rank} target generators"
                )
        object.__setattr__(self, "matrix", matrix)


@dataclass(frozen=True)
class Complex:
    """
    Bounded cochain complex C^lo → ... → C^hi.

    ``differentials[k]`` is the matrix of d^{lo+k}: C^{lo+k} → C^{lo+k+1}.
    """
    lo: int
    hi: int
    terms: Tuple[PresentedModule, ...]
    differentials: Tuple[Matrix, ...] = ()

    def __post_init__(self):
        if self.hi < self.lo:
            raise StructuralError(f"Complex bounds lo={self.lo} > hi={self.hi}")
        terms = tuple(self.terms)
        if len(terms) != self.hi - self.lo + 1:
            raise StructuralError("Complex needs exactly one term per degree in [lo, hi]")
        ring = terms[0].ring
        if any(term.ring != ring for term in terms):
            raise StructuralError("Complex terms live over different rings")
        diffs = tuple(tuple(tuple(col) for col in d) for d in self.differentials)
        if not diffs:
            diffs = tuple(zero_matrix(ring, terms[k].rank, terms[k + 1].rank)
                          for k in range(len(terms) - 1))
        if len(diffs) != len(terms) - 1:
            raise StructuralError("Complex needs one differential between consecutive terms")
        for k, d in enumerate(diffs):
            if len(d) != terms[k].rank or any(len(col) != terms[k + 1].rank for col in d):
                raise StructuralError(f"Differential at degree {self.lo + k} has the wrong shape")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "differentials", diffs)

    @classmethod
    def concentrated(cls, module: PresentedModule, degree: int = 0) -> 'Complex':
        """The module placed in a single cohomological degree."""
        return cls(degree, degree, (module,), ())

    @classmethod
    def zero(cls, ring: PolynomialRing) -> 'Complex':
        return cls(0, 0, (PresentedModule.zero(ring),), ())

    @property
    def ring(self) -> PolynomialRing:
        return self.terms[0].ring

    def term(self, degree: int) -> PresentedModule:
        if degree < self.lo or degree > self.hi:
            return PresentedModule.zero(self.ring)
        return self.terms[degree - self.lo]

    def differential(self, degree: int) -> Matrix:
        """Matrix of d^degree; zero-shaped outside the range."""
        if self.lo <= degree < self.hi:
            return self.differentials[degree - self.lo]
        return zero_matrix(self.ring, self.term(degree).rank, self.term(degree + 1).rank)

    @property
    def has_zero_differential(self) -> bool:
        return all(matrix_is_zero(d) for d in self.differentials)

    @property
    def is_free(self) -> bool:
        return all(term.is_free for term in self.terms)

    def twist(self, amount: int) -> 'Complex':
        """Shift the internal grading of every term."""
        return Complex(self.lo, self.hi, tuple(t.twist(amount) for t in self.terms),
                       self.differentials)


@dataclass(frozen=True)
class FreeComplex(Complex):
    """
    A bounded complex of free P-modules.

    ``comparison`` optionally records a quasi-isomorphism onto another complex as one
    matrix per degree in [lo, hi].
    """
    comparison: Optional[Tuple[Matrix, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        super().__post_init__()
        if not all(term.is_free for term in self.terms):
            raise StructuralError("FreeComplex terms must be free")


@dataclass(frozen=True)
class ComplexMap:
    """A degree-0 chain map, one matrix per degree; missing degrees are zero."""
    source: Complex
    target: Complex
    components: Tuple[Tuple[int, Matrix], ...] = ()

    def component(self, degree: int) -> Matrix:
        for deg, matrix in self.components:
            if deg == degree:
                return matrix
        return zero_matrix(self.source.ring, self.source.term(degree).rank,
                           self.target.term(degree).rank)
