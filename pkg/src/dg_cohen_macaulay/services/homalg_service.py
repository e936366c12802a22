"""
Homological algebra over the polynomial ring: kernels, cohomology, annihilators,
free resolutions of modules and complexes, duals into P and Ext profiles.
"""
import logging
import threading
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.dg_cohen_macaulay.errors import StructuralError, UnsupportedInputError
from src.dg_cohen_macaulay.models.algebra import Ideal, Monomial, Polynomial, PolynomialRing
from src.dg_cohen_macaulay.models.homalg import (
    Complex,
    ComplexMap,
    FreeComplex,
    Matrix,
    ModuleMap,
    PresentedModule,
    zero_matrix,
)
from src.dg_cohen_macaulay.services.groebner_service import (
    GroebnerService,
    ModuleBasis,
    Vector,
    add_multiple,
    column_to_vector,
    mono_divides,
    mono_mul,
    polynomial_vector,
    vector_degree,
    vector_is_homogeneous,
    vector_to_column,
)
from src.dg_cohen_macaulay.services.linear_algebra import nullspace_mod_p

logger = logging.getLogger(__name__)


def monomials_of_degree(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent vectors of the given total degree."""
    if degree < 0:
        return
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for index in combo:
            exps[index] += 1
        yield tuple(exps)


def apply_matrix(columns: Sequence[Vector], vec: Vector, p: int) -> Vector:
    """Image of a source vector under the map whose columns are given."""
    out: Vector = {}
    for (k, mono), coeff in vec.items():
        add_multiple(out, columns[k], coeff, mono, p)
    return out


def _shift_components(vec: Vector, offset: int) -> Vector:
    return {(comp + offset, mono): coeff for (comp, mono), coeff in vec.items()}


class HomologicalAlgebraService:
    """Homological engine for graded presented modules and bounded complexes."""

    def __init__(self, groebner: Optional[GroebnerService] = None, strict: bool = False):
        """
        Initialize the service.

        Args:
            groebner: Gröbner engine to use; a fresh one by default.
            strict: Validate every internally built complex (d∘d = 0, well-defined maps).
        """
        self.groebner = groebner or GroebnerService()
        self.strict = strict
        self._lock = threading.Lock()
        self._basis_cache: Dict[PresentedModule, ModuleBasis] = {}
        self._resolution_cache: Dict[Complex, FreeComplex] = {}
        self._dual_cache: Dict[Complex, Complex] = {}
        self._ext_cache: Dict[Complex, Dict[int, PresentedModule]] = {}

    # ------------------------------------------------------------------ vectors

    @staticmethod
    def _matrix_vectors(matrix: Matrix) -> List[Vector]:
        return [column_to_vector(col) for col in matrix]

    def relation_vectors(self, module: PresentedModule) -> List[Vector]:
        return [v for v in self._matrix_vectors(module.relations) if v]

    def relation_basis(self, module: PresentedModule) -> ModuleBasis:
        """Gröbner basis of the relation submodule in term-over-position order."""
        with self._lock:
            cached = self._basis_cache.get(module)
        if cached is not None:
            return cached
        basis = self.groebner.module_basis(self.relation_vectors(module), module.degrees,
                                           module.ring.characteristic)
        with self._lock:
            self._basis_cache[module] = basis
        return basis

    def kernel_vectors(self, ring: PolynomialRing, columns: Sequence[Vector],
                       source_shifts: Sequence[int], target_shifts: Sequence[int],
                       target_relations: Sequence[Vector] = ()) -> List[Vector]:
        """
        Generators of {u : Σ uⱼ·columnⱼ ∈ target_relations}.

        Computed by position-over-term elimination on the augmented vectors
        (columnⱼ, eⱼ) together with the target relations.
        """
        if not columns:
            return []
        r = len(target_shifts)
        zero = ring.zero_monomial
        generators = []
        for j, col in enumerate(columns):
            vec = dict(col)
            vec[(r + j, zero)] = 1
            generators.append(vec)
        generators.extend(rel for rel in target_relations if rel)
        shifts = tuple(target_shifts) + tuple(source_shifts)
        basis = self.groebner.module_basis(generators, shifts, ring.characteristic,
                                           position_first=True)
        return [_shift_components(vec, -r)
                for vec, lead in zip(basis.elements, basis.leads) if lead[0] >= r]

    def minimal_generators(self, vectors: Sequence[Vector], shifts: Sequence[int],
                           ambient: Sequence[Vector], characteristic: int) -> List[Vector]:
        """
        Minimal homogeneous generators of (span(vectors) + ambient) / ambient.

        Vectors are taken in increasing degree and kept when they do not lie in the span
        of the ambient vectors and those kept before.
        """
        engine = self.groebner.engine(shifts, characteristic)
        engine.add(v for v in ambient if v)
        engine.complete()
        kept = []
        for vec in sorted((v for v in vectors if v), key=lambda v: vector_degree(v, shifts)):
            if engine.reduce(vec):
                kept.append(vec)
                engine.add([vec])
                engine.complete()
        return kept

    # ------------------------------------------------------------------ modules

    def is_zero_module(self, module: PresentedModule) -> bool:
        if module.rank == 0:
            return True
        basis = self.relation_basis(module)
        return all(basis.covers_component(j) for j in range(module.rank))

    def prune(self, module: PresentedModule) -> PresentedModule:
        """
        Minimal presentation: eliminate generators killed by relations with a unit entry,
        then keep a minimal set of relations.
        """
        ring = module.ring
        p = ring.characteristic
        zero = ring.zero_monomial
        degrees = list(module.degrees)
        relations = self.relation_vectors(module)
        while True:
            found = self._find_unit_entry(relations, zero)
            if found is None:
                break
            index, j, coeff = found
            pivot = relations.pop(index)
            inverse = pow(coeff, -1, p)
            updated = []
            for rel in relations:
                part = [(mono, value) for (comp, mono), value in rel.items() if comp == j]
                if part:
                    rel = dict(rel)
                    for mono, value in part:
                        add_multiple(rel, pivot, (-value * inverse) % p, mono, p)
                rel = {(comp - 1 if comp > j else comp, mono): value
                       for (comp, mono), value in rel.items() if comp != j}
                if rel:
                    updated.append(rel)
            relations = updated
            degrees.pop(j)
        if degrees:
            relations = self.minimal_generators(relations, degrees, [], p)
        else:
            relations = []
        columns = tuple(vector_to_column(ring, rel, len(degrees)) for rel in relations)
        return PresentedModule(ring, tuple(degrees), columns)

    @staticmethod
    def _find_unit_entry(relations: Sequence[Vector], zero: Monomial):
        for index, rel in enumerate(relations):
            for (comp, mono), coeff in rel.items():
                if mono != zero:
                    continue
                if all(other == zero for c, other in rel if c == comp):
                    return index, comp, coeff
        return None

    def image_module(self, columns: Matrix, target: PresentedModule) -> PresentedModule:
        """The submodule of ``target`` generated by the given columns, presented on its own."""
        ring = target.ring
        vectors = [v for v in self._matrix_vectors(columns) if v]
        if not vectors:
            return PresentedModule.zero(ring)
        degrees = [vector_degree(v, target.degrees) for v in vectors]
        relations = self.kernel_vectors(ring, vectors, degrees, target.degrees,
                                        self.relation_vectors(target))
        module = PresentedModule(ring, tuple(degrees),
                                 tuple(vector_to_column(ring, r, len(vectors)) for r in relations))
        return self.prune(module)

    def ideal_module(self, ideal: Ideal, quotient: Ideal) -> PresentedModule:
        """The ideal generated by ``ideal`` inside P/quotient, as a module."""
        target = PresentedModule.cyclic(ideal.ring, quotient)
        return self.image_module(tuple((g,) for g in ideal.generators), target)

    def intersect_ideals(self, a: Ideal, b: Ideal) -> Ideal:
        """I ∩ J as the kernel of P → P/I ⊕ P/J, 1 ↦ (1, 1)."""
        ring = a.ring
        if a.is_zero_ideal or b.is_zero_ideal:
            return Ideal(ring, ())
        zero = ring.zero_monomial
        relations = ([polynomial_vector(g, 0) for g in a.generators]
                     + [polynomial_vector(g, 1) for g in b.generators])
        kernel = self.kernel_vectors(ring, [{(0, zero): 1, (1, zero): 1}], [0], [0, 0], relations)
        return self._ideal_from_vectors(ring, kernel)

    def _ideal_from_vectors(self, ring: PolynomialRing, vectors: Sequence[Vector]) -> Ideal:
        polys = tuple(Polynomial.from_clean_terms(ring, {m: c for (_, m), c in v.items()})
                      for v in vectors)
        return self.groebner.gb_compute(Ideal(ring, polys)).ideal()

    def annihilator(self, module: PresentedModule) -> Ideal:
        """
        Ideal of elements killing the module, as the intersection of the ideal quotients
        (N : eⱼ). The zero module has the unit ideal as annihilator.
        """
        ring = module.ring
        if self.is_zero_module(module):
            return Ideal(ring, (ring.one(),))
        relations = self.relation_vectors(module)
        zero = ring.zero_monomial
        result: Optional[Ideal] = None
        for j in range(module.rank):
            quotient = self.kernel_vectors(ring, [{(j, zero): 1}], [module.degrees[j]],
                                           module.degrees, relations)
            ideal = self._ideal_from_vectors(ring, quotient)
            result = ideal if result is None else self.intersect_ideals(result, ideal)
        return result

    def module_krull_dim(self, module: PresentedModule) -> int:
        """Krull dimension of P/ann(module); -1 for the zero module."""
        if self.is_zero_module(module):
            return -1
        return self.groebner.ideal_krull_dimension(self.annihilator(module))

    def hilbert_function(self, module: PresentedModule, degree: int) -> int:
        """Dimension over k of the graded piece of the module in the given degree."""
        if module.rank == 0:
            return 0
        basis = self.relation_basis(module)
        n = module.ring.nvars
        count = 0
        for j, shift in enumerate(module.degrees):
            leads = [mono for comp, mono in basis.leads if comp == j]
            for mono in monomials_of_degree(n, degree - shift):
                if not any(mono_divides(lead, mono) for lead in leads):
                    count += 1
        return count

    # ------------------------------------------------------------------ maps

    def make_map(self, source: PresentedModule, target: PresentedModule,
                 matrix: Matrix) -> ModuleMap:
        """
        Build a validated degree-0 map.

        Raises:
            StructuralError: If relations of the source do not map into the target's
                relations, or a column has the wrong degree.
        """
        module_map = ModuleMap(source, target, matrix)
        self._check_map(source, target, self._matrix_vectors(module_map.matrix), "map")
        return module_map

    def _check_map(self, source: PresentedModule, target: PresentedModule,
                   columns: List[Vector], label: str) -> None:
        for k, col in enumerate(columns):
            if not col:
                continue
            if not vector_is_homogeneous(col, target.degrees):
                raise UnsupportedInputError(f"{label}: column {k} is not homogeneous")
            if vector_degree(col, target.degrees) != source.degrees[k]:
                raise StructuralError(f"{label}: column {k} does not have degree 0")
        basis = self.relation_basis(target)
        p = source.ring.characteristic
        for rel in self.relation_vectors(source):
            if not basis.contains(apply_matrix(columns, rel, p)):
                raise StructuralError(f"{label}: relations of the source are not preserved")

    def syzygies(self, module_map: ModuleMap) -> Matrix:
        """
        Generators of the kernel of a map between free modules.

        Raises:
            StructuralError: If the source or target is not free.
        """
        if not (module_map.source.is_free and module_map.target.is_free):
            raise StructuralError("syzygies requires a map between free modules")
        ring = module_map.source.ring
        kernel = self.kernel_vectors(ring, self._matrix_vectors(module_map.matrix),
                                     module_map.source.degrees, module_map.target.degrees)
        return tuple(vector_to_column(ring, v, module_map.source.rank) for v in kernel)

    def hom_degree_zero(self, source: PresentedModule, target: PresentedModule) -> List[Matrix]:
        """
        A k-basis of degree-0 homomorphisms source → target, found by solving the linear
        conditions on the images of the source generators modulo p.
        """
        ring = source.ring
        p = ring.characteristic
        n = ring.nvars
        basis = self.relation_basis(target)
        unknowns: List[Tuple[int, Tuple[int, Monomial]]] = []
        for j, degree in enumerate(source.degrees):
            for comp, shift in enumerate(target.degrees):
                leads = [mono for c, mono in basis.leads if c == comp]
                for mono in monomials_of_degree(n, degree - shift):
                    if not any(mono_divides(lead, mono) for lead in leads):
                        unknowns.append((j, (comp, mono)))
        if not unknowns:
            return []
        rows: Dict[Tuple, Dict[int, int]] = {}
        for r_index, rel in enumerate(self.relation_vectors(source)):
            for u_index, (j, (comp, mono)) in enumerate(unknowns):
                part = {m: v for (c, m), v in rel.items() if c == j}
                if not part:
                    continue
                vec: Vector = {}
                for m, v in part.items():
                    vec[(comp, mono_mul(m, mono))] = v
                for term, coeff in basis.reduce(vec).items():
                    rows.setdefault((r_index, term), {})[u_index] = coeff
        system = np.zeros((len(rows), len(unknowns)), dtype=np.int64)
        for row, entries in enumerate(rows.values()):
            for col, coeff in entries.items():
                system[row, col] = coeff
        maps = []
        for solution in nullspace_mod_p(system, p):
            images: List[Vector] = [{} for _ in range(source.rank)]
            for u_index, value in enumerate(solution):
                if int(value) % p:
                    j, term = unknowns[u_index]
                    images[j][term] = int(value) % p
            maps.append(tuple(vector_to_column(ring, v, target.rank) for v in images))
        return maps

    def _is_surjective(self, columns: Sequence[Vector], target: PresentedModule) -> bool:
        ring = target.ring
        relations = self.relation_vectors(target) + [c for c in columns if c]
        cokernel = PresentedModule(ring, target.degrees,
                                   tuple(vector_to_column(ring, r, target.rank) for r in relations))
        return self.is_zero_module(cokernel)

    def _has_surjection(self, source: PresentedModule, target: PresentedModule,
                        rng: np.random.Generator, attempts: int = 3) -> bool:
        maps = self.hom_degree_zero(source, target)
        if not maps:
            return False
        p = source.ring.characteristic
        vectors = [self._matrix_vectors(m) for m in maps]
        for _ in range(attempts):
            coefficients = rng.integers(1, p, size=len(maps))
            combined: List[Vector] = [{} for _ in range(source.rank)]
            for coeff, columns in zip(coefficients, vectors):
                for j, col in enumerate(columns):
                    add_multiple(combined[j], col, int(coeff), source.ring.zero_monomial, p)
            if self._is_surjective(combined, target):
                return True
        return False

    def are_isomorphic(self, first: PresentedModule, second: PresentedModule,
                       seed: int = 0) -> bool:
        """Decide isomorphism by exhibiting degree-0 surjections in both directions."""
        first, second = self.prune(first), self.prune(second)
        first_zero, second_zero = self.is_zero_module(first), self.is_zero_module(second)
        if first_zero or second_zero:
            return first_zero and second_zero
        if sorted(first.degrees) != sorted(second.degrees):
            return False
        rng = np.random.default_rng(seed)
        return self._has_surjection(first, second, rng) and self._has_surjection(second, first, rng)

    # ------------------------------------------------------------------ complexes

    def make_complex(self, terms: Dict[int, PresentedModule],
                     differentials: Dict[int, Matrix]) -> Complex:
        """
        Build a validated complex from per-degree terms and differentials.

        Raises:
            StructuralError: If a differential is not a well-defined map or d∘d ≠ 0.
        """
        if not terms:
            raise StructuralError("A complex needs at least one term")
        ring = next(iter(terms.values())).ring
        lo, hi = min(terms), max(terms)
        full = tuple(terms.get(i, PresentedModule.zero(ring)) for i in range(lo, hi + 1))
        for degree in differentials:
            if not lo <= degree < hi:
                raise StructuralError(f"Differential at degree {degree} is outside [{lo}, {hi})")
        diffs = tuple(differentials.get(i, zero_matrix(ring, full[i - lo].rank, full[i - lo + 1].rank))
                      for i in range(lo, hi))
        complex_ = Complex(lo, hi, full, diffs)
        self.validate_complex(complex_)
        return complex_

    def validate_complex(self, complex_: Complex) -> None:
        p = complex_.ring.characteristic
        for i in range(complex_.lo, complex_.hi):
            columns = self._matrix_vectors(complex_.differential(i))
            self._check_map(complex_.term(i), complex_.term(i + 1), columns, f"d^{i}")
            if i + 1 < complex_.hi:
                after = self._matrix_vectors(complex_.differential(i + 1))
                basis = self.relation_basis(complex_.term(i + 2))
                for k, col in enumerate(columns):
                    if not basis.contains(apply_matrix(after, col, p)):
                        raise StructuralError(f"d^{i + 1}∘d^{i} is not zero on generator {k}")

    def _finish(self, complex_: Complex) -> Complex:
        if self.strict:
            self.validate_complex(complex_)
        return complex_

    def shift(self, complex_: Complex, amount: int) -> Complex:
        """C[amount]: degree i becomes i - amount; differentials change sign for odd amounts."""
        sign = -1 if amount % 2 else 1
        diffs = tuple(tuple(tuple(e.scale(sign) for e in col) for col in d)
                      for d in complex_.differentials)
        return Complex(complex_.lo - amount, complex_.hi - amount, complex_.terms, diffs)

    def identity_map(self, complex_: Complex) -> ComplexMap:
        ring = complex_.ring
        components = []
        for i in range(complex_.lo, complex_.hi + 1):
            rank = complex_.term(i).rank
            components.append((i, tuple(tuple(ring.one() if r == k else ring.zero()
                                              for r in range(rank)) for k in range(rank))))
        return ComplexMap(complex_, complex_, tuple(components))

    def multiplication_map(self, complex_: Complex, element: Polynomial) -> ComplexMap:
        """Multiplication by a homogeneous element, from the twisted complex onto itself."""
        if not element.is_homogeneous():
            raise UnsupportedInputError(f"Element {element} is not homogeneous")
        ring = complex_.ring
        source = complex_.twist(max(element.total_degree(), 0))
        components = []
        for i in range(complex_.lo, complex_.hi + 1):
            rank = complex_.term(i).rank
            components.append((i, tuple(tuple(element if r == k else ring.zero()
                                              for r in range(rank)) for k in range(rank))))
        return ComplexMap(source, complex_, tuple(components))

    def cone(self, chain_map: ComplexMap) -> Complex:
        """Mapping cone X[1] ⊕ Y with differential (x, y) ↦ (-d x, f x + d y)."""
        source, target = chain_map.source, chain_map.target
        ring = target.ring
        lo = min(source.lo - 1, target.lo)
        hi = max(source.hi - 1, target.hi)
        terms = tuple(source.term(i + 1).direct_sum(target.term(i)) for i in range(lo, hi + 1))
        diffs = []
        for i in range(lo, hi):
            next_source_rank = source.term(i + 2).rank
            d_source = source.differential(i + 1)
            f_part = chain_map.component(i + 1)
            d_target = target.differential(i)
            columns = []
            for k in range(source.term(i + 1).rank):
                columns.append(tuple(-e for e in d_source[k]) + tuple(f_part[k]))
            zeros = tuple(ring.zero() for _ in range(next_source_rank))
            for k in range(target.term(i).rank):
                columns.append(zeros + tuple(d_target[k]))
            diffs.append(tuple(columns))
        return self._finish(Complex(lo, hi, terms, tuple(diffs)))

    def cohomology_at(self, complex_: Complex, degree: int) -> PresentedModule:
        """Minimal presentation of ker(d^degree) / im(d^{degree-1})."""
        ring = complex_.ring
        if degree < complex_.lo or degree > complex_.hi:
            return PresentedModule.zero(ring)
        term = complex_.term(degree)
        if term.rank == 0:
            return PresentedModule.zero(ring)
        p = ring.characteristic
        zero = ring.zero_monomial
        if degree < complex_.hi:
            following = complex_.term(degree + 1)
            kernel = self.kernel_vectors(ring, self._matrix_vectors(complex_.differential(degree)),
                                         term.degrees, following.degrees,
                                         self.relation_vectors(following))
        else:
            kernel = [{(j, zero): 1} for j in range(term.rank)]
        boundaries = self.relation_vectors(term)
        if degree > complex_.lo:
            boundaries += [v for v in self._matrix_vectors(complex_.differential(degree - 1)) if v]
        kernel = self.minimal_generators(kernel, term.degrees, boundaries, p)
        if not kernel:
            return PresentedModule.zero(ring)
        shifts = [vector_degree(v, term.degrees) for v in kernel]
        relations = self.kernel_vectors(ring, kernel, shifts, term.degrees, boundaries)
        module = PresentedModule(ring, tuple(shifts),
                                 tuple(vector_to_column(ring, r, len(kernel)) for r in relations))
        return self.prune(module)

    def cohomology_degrees(self, complex_: Complex) -> List[int]:
        return [i for i in range(complex_.lo, complex_.hi + 1)
                if not self.is_zero_module(self.cohomology_at(complex_, i))]

    def euler_characteristic(self, complex_: Complex, degree: int) -> int:
        """Alternating sum over i of the Hilbert function of Hⁱ in one internal degree."""
        return sum((-1) ** (i % 2) * self.hilbert_function(self.cohomology_at(complex_, i), degree)
                   for i in range(complex_.lo, complex_.hi + 1))

    # ------------------------------------------------------------------ resolutions

    def free_resolution(self, module: PresentedModule) -> FreeComplex:
        """Minimal graded free resolution, placed in degrees ≤ 0."""
        ring = module.ring
        p = ring.characteristic
        pruned = self.prune(module)
        if pruned.rank == 0:
            return FreeComplex(0, 0, (PresentedModule.zero(ring),), ())
        free_terms = [PresentedModule.free(ring, pruned.degrees)]
        maps: List[Matrix] = []
        shifts = list(pruned.degrees)
        current = self.minimal_generators(self.relation_vectors(pruned), shifts, [], p)
        while current:
            next_shifts = [vector_degree(v, shifts) for v in current]
            maps.append(tuple(vector_to_column(ring, v, len(shifts)) for v in current))
            free_terms.append(PresentedModule.free(ring, next_shifts))
            syzygies = self.kernel_vectors(ring, current, next_shifts, shifts)
            current = self.minimal_generators(syzygies, next_shifts, [], p)
            shifts = next_shifts
        length = len(free_terms) - 1
        return FreeComplex(-length, 0, tuple(reversed(free_terms)), tuple(reversed(maps)))

    def resolve_complex(self, complex_: Complex) -> FreeComplex:
        """
        Free complex F with a quasi-isomorphism F → C, built top-down by killing the
        cycles of the mapping cone degree by degree. The comparison map is recorded on
        the result.
        """
        with self._lock:
            cached = self._resolution_cache.get(complex_)
        if cached is not None:
            return cached
        ring = complex_.ring
        p = ring.characteristic
        free_degrees: Dict[int, List[int]] = {}
        d_free: Dict[int, List[Vector]] = {}
        comparison: Dict[int, List[Vector]] = {}
        floor = complex_.lo - ring.nvars - 2
        degree = complex_.hi
        while True:
            above = free_degrees.get(degree + 1, [])
            above2 = free_degrees.get(degree + 2, [])
            term = complex_.term(degree)
            following = complex_.term(degree + 1)
            a, b = len(above), len(above2)
            source_shifts = list(above) + list(term.degrees)
            target_shifts = list(above2) + list(following.degrees)
            columns: List[Vector] = []
            for k in range(a):
                col = dict(d_free[degree + 1][k])
                col.update(_shift_components(comparison[degree + 1][k], b))
                columns.append(col)
            for col in self._matrix_vectors(complex_.differential(degree)):
                columns.append(_shift_components(col, b))
            target_relations = [_shift_components(r, b) for r in self.relation_vectors(following)]
            cycles = self.kernel_vectors(ring, columns, source_shifts, target_shifts,
                                         target_relations)
            ambient = [_shift_components(r, a) for r in self.relation_vectors(term)]
            if degree > complex_.lo:
                ambient += [_shift_components(v, a)
                            for v in self._matrix_vectors(complex_.differential(degree - 1)) if v]
            generators = self.minimal_generators(cycles, source_shifts, ambient, p)
            free_degrees[degree] = [vector_degree(g, source_shifts) for g in generators]
            d_free[degree] = [{(c, m): (-v) % p for (c, m), v in g.items() if c < a}
                              for g in generators]
            comparison[degree] = [{(c - a, m): v for (c, m), v in g.items() if c >= a}
                                  for g in generators]
            if degree < complex_.lo and not generators:
                break
            if degree < floor:
                raise StructuralError("Free replacement did not terminate")
            degree -= 1

        nonempty = [i for i, degs in free_degrees.items() if degs]
        hi = complex_.hi
        if not nonempty:
            result = FreeComplex(hi, hi, (PresentedModule.zero(ring),), (), comparison=None)
        else:
            lo = min(nonempty)
            terms = tuple(PresentedModule.free(ring, free_degrees.get(i, [])) for i in range(lo, hi + 1))
            diffs = tuple(
                tuple(vector_to_column(ring, v, len(free_degrees.get(i + 1, []))) for v in d_free[i])
                for i in range(lo, hi)
            )
            comp = tuple(
                tuple(vector_to_column(ring, v, complex_.term(i).rank) for v in comparison.get(i, []))
                for i in range(lo, hi + 1)
            )
            result = FreeComplex(lo, hi, terms, diffs, comparison=comp)
        logger.debug("Free replacement with ranks %s",
                     [t.rank for t in result.terms])
        with self._lock:
            self._resolution_cache[complex_] = result
        return result

    def dual_into_base(self, free: Complex, shift: int = 0) -> Complex:
        """
        Hom(F, P): degree j holds the dual of F^{-j} with negated generator degrees and
        differential (-1)^{j+1} times the transpose of d^{-j-1}; then shifted.
        """
        if not free.is_free:
            raise StructuralError("dual_into_base requires a complex of free modules")
        ring = free.ring
        lo, hi = -free.hi, -free.lo
        terms = tuple(PresentedModule.free(ring, tuple(-d for d in free.term(-j).degrees))
                      for j in range(lo, hi + 1))
        diffs = []
        for j in range(lo, hi):
            matrix = free.differential(-j - 1)
            rows = free.term(-j).rank
            sign = -1 if (j + 1) % 2 else 1
            diffs.append(tuple(tuple(matrix[c][r].scale(sign) for c in range(len(matrix)))
                               for r in range(rows)))
        dual = Complex(lo, hi, terms, tuple(diffs))
        return self.shift(dual, shift) if shift else dual

    def dual_complex(self, complex_: Complex) -> Complex:
        """Hom(resolve_complex(C), P), cached per complex."""
        with self._lock:
            cached = self._dual_cache.get(complex_)
        if cached is not None:
            return cached
        dual = self.dual_into_base(self.resolve_complex(complex_), 0)
        with self._lock:
            self._dual_cache[complex_] = dual
        return dual

    def ext_profile(self, complex_: Complex) -> Dict[int, PresentedModule]:
        """Nonzero modules Ext^j_P(C, P), keyed by j."""
        with self._lock:
            cached = self._ext_cache.get(complex_)
        if cached is not None:
            return cached
        dual = self.dual_complex(complex_)
        profile = {}
        for j in range(dual.lo, dual.hi + 1):
            module = self.cohomology_at(dual, j)
            if not self.is_zero_module(module):
                profile[j] = module
        with self._lock:
            self._ext_cache[complex_] = profile
        return profile
