"""
Buchberger's algorithm for ideals and for submodules of graded free modules over a
polynomial ring with prime-field coefficients.

Module elements are sparse vectors ``{(component, monomial): coefficient}``. The same
engine serves ideals (one component), syzygies and kernels (position-over-term
elimination orders) and module membership (term-over-position orders).
"""
import logging
import threading
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.dg_cohen_macaulay.errors import StructuralError, UnsupportedInputError
from src.dg_cohen_macaulay.models.algebra import (
    GroebnerBasis,
    Ideal,
    Monomial,
    Polynomial,
    PolynomialRing,
)

logger = logging.getLogger(__name__)

Term = Tuple[int, Monomial]
Vector = Dict[Term, int]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def vector_degree(vec: Vector, shifts: Sequence[int]) -> int:
    """Internal degree of a homogeneous vector under the given generator degrees."""
    comp, mono = next(iter(vec))
    return sum(mono) + shifts[comp]


def vector_is_homogeneous(vec: Vector, shifts: Sequence[int]) -> bool:
    return len({sum(mono) + shifts[comp] for comp, mono in vec}) <= 1


def add_multiple(target: Vector, source: Vector, factor: int, mono: Monomial, p: int) -> None:
    """target += factor · x^mono · source, in place."""
    for (comp, smono), coeff in source.items():
        key = (comp, mono_mul(smono, mono))
        value = (target.get(key, 0) + factor * coeff) % p
        if value:
            target[key] = value
        else:
            target.pop(key, None)


def scale_vector(vec: Vector, factor: int, p: int) -> Vector:
    factor %= p
    if not factor:
        return {}
    return {term: coeff * factor % p for term, coeff in vec.items()}


def add_vectors(a: Vector, b: Vector, p: int) -> Vector:
    out = dict(a)
    for term, coeff in b.items():
        value = (out.get(term, 0) + coeff) % p
        if value:
            out[term] = value
        else:
            out.pop(term, None)
    return out


def column_to_vector(column: Sequence[Polynomial]) -> Vector:
    """Convert a column of polynomials into a sparse vector."""
    return {(i, mono): coeff for i, poly in enumerate(column) for mono, coeff in poly._terms.items()}


def vector_to_column(ring: PolynomialRing, vec: Vector, rank: int) -> Tuple[Polynomial, ...]:
    """Convert a sparse vector back into a column of ``rank`` polynomials."""
    buckets: List[Dict[Monomial, int]] = [{} for _ in range(rank)]
    for (comp, mono), coeff in vec.items():
        if comp >= rank:
            raise StructuralError(f"Vector component {comp} exceeds rank {rank}")
        buckets[comp][mono] = coeff
    return tuple(Polynomial.from_clean_terms(ring, bucket) for bucket in buckets)


def polynomial_vector(poly: Polynomial, component: int = 0) -> Vector:
    return {(component, mono): coeff for mono, coeff in poly._terms.items()}


class TermOrder:
    """
    Degree-compatible order on the terms of a graded free module.

    Term-over-position compares internal degree first, then reverse lexicographic tails,
    then prefers lower component indices. Position-over-term puts the component first,
    lower indices being larger, which turns Gröbner bases into elimination bases.
    """

    __slots__ = ("shifts", "position_first", "_cache")

    def __init__(self, shifts: Sequence[int], position_first: bool = False):
        self.shifts = tuple(shifts)
        self.position_first = position_first
        self._cache: Dict[Term, Tuple] = {}

    def key(self, term: Term) -> Tuple:
        cached = self._cache.get(term)
        if cached is None:
            comp, mono = term
            degree = sum(mono) + self.shifts[comp]
            tail = tuple(-e for e in reversed(mono))
            if self.position_first:
                cached = (-comp, degree, tail)
            else:
                cached = (degree, tail, -comp)
            self._cache[term] = cached
        return cached

    def leading_term(self, vec: Vector) -> Term:
        return max(vec, key=self.key)


class BuchbergerEngine:
    """
    Incremental Buchberger completion with normal selection, the chain criterion and,
    for ideals, the coprime-leading-term criterion.
    """

    def __init__(self, order: TermOrder, characteristic: int, rank_one: bool = False):
        self.order = order
        self.p = characteristic
        self.rank_one = rank_one
        self.elements: List[Vector] = []
        self.leads: List[Term] = []
        self._pending: Dict[Tuple[int, int], Term] = {}
        self.pairs_processed = 0

    def reduce(self, vec: Vector) -> Vector:
        """Fully reduce a vector against the current elements."""
        work = dict(vec)
        remainder: Vector = {}
        p = self.p
        key = self.order.key
        while work:
            lead = max(work, key=key)
            coeff = work[lead]
            comp, mono = lead
            for element, (lcomp, lmono) in zip(self.elements, self.leads):
                if lcomp == comp and mono_divides(lmono, mono):
                    add_multiple(work, element, p - coeff, mono_div(mono, lmono), p)
                    break
            else:
                remainder[lead] = coeff
                del work[lead]
        return remainder

    def _insert(self, vec: Vector) -> None:
        lead = self.order.leading_term(vec)
        inv = pow(vec[lead], -1, self.p)
        vec = scale_vector(vec, inv, self.p)
        index = len(self.elements)
        self.elements.append(vec)
        self.leads.append(lead)
        for i, other in enumerate(self.leads[:-1]):
            if other[0] == lead[0]:
                self._pending[(i, index)] = (lead[0], mono_lcm(other[1], lead[1]))

    def add(self, vectors: Iterable[Vector]) -> None:
        """Reduce and insert generators; call :meth:`complete` afterwards."""
        for vec in vectors:
            remainder = self.reduce(vec)
            if remainder:
                self._insert(remainder)

    def _chain_criterion(self, i: int, j: int, lcm_term: Term) -> bool:
        comp, lcm = lcm_term
        for k, (kcomp, kmono) in enumerate(self.leads):
            if k == i or k == j or kcomp != comp or not mono_divides(kmono, lcm):
                continue
            if (min(i, k), max(i, k)) in self._pending or (min(j, k), max(j, k)) in self._pending:
                continue
            return True
        return False

    def _s_vector(self, i: int, j: int, lcm: Monomial) -> Vector:
        s: Vector = {}
        add_multiple(s, self.elements[i], 1, mono_div(lcm, self.leads[i][1]), self.p)
        add_multiple(s, self.elements[j], self.p - 1, mono_div(lcm, self.leads[j][1]), self.p)
        return s

    def complete(self) -> None:
        """Process pending pairs until the elements form a Gröbner basis."""
        while self._pending:
            pair = min(self._pending, key=lambda ij: self.order.key(self._pending[ij]))
            lcm_term = self._pending.pop(pair)
            i, j = pair
            if self.rank_one and mono_coprime(self.leads[i][1], self.leads[j][1]):
                continue
            if self._chain_criterion(i, j, lcm_term):
                continue
            self.pairs_processed += 1
            remainder = self.reduce(self._s_vector(i, j, lcm_term[1]))
            if remainder:
                self._insert(remainder)

    def reduced_basis(self) -> 'ModuleBasis':
        """Minimalize, tail-reduce and sort the current Gröbner basis."""
        keep = []
        for idx, lead in enumerate(self.leads):
            redundant = False
            for jdx, other in enumerate(self.leads):
                if jdx == idx or other[0] != lead[0] or not mono_divides(other[1], lead[1]):
                    continue
                if other[1] != lead[1] or jdx < idx:
                    redundant = True
                    break
            if not redundant:
                keep.append(idx)
        minimal = [self.elements[i] for i in keep]
        minimal_leads = [self.leads[i] for i in keep]
        reduced = []
        for pos, vec in enumerate(minimal):
            lead = minimal_leads[pos]
            helper = BuchbergerEngine(self.order, self.p, self.rank_one)
            helper.elements = minimal[:pos] + minimal[pos + 1:]
            helper.leads = minimal_leads[:pos] + minimal_leads[pos + 1:]
            tail = helper.reduce({t: c for t, c in vec.items() if t != lead})
            tail[lead] = 1
            reduced.append((lead, tail))
        reduced.sort(key=lambda pair: self.order.key(pair[0]), reverse=True)
        logger.debug("Gröbner basis with %d elements after %d pairs",
                     len(reduced), self.pairs_processed)
        return ModuleBasis(self.order, self.p,
                           [vec for _, vec in reduced], [lead for lead, _ in reduced])


class ModuleBasis:
    """A reduced Gröbner basis of a submodule of a graded free module."""

    def __init__(self, order: TermOrder, characteristic: int,
                 elements: List[Vector], leads: List[Term]):
        self.order = order
        self.p = characteristic
        self.elements = elements
        self.leads = leads

    def reduce(self, vec: Vector) -> Vector:
        engine = BuchbergerEngine(self.order, self.p)
        engine.elements = self.elements
        engine.leads = self.leads
        return engine.reduce(vec)

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def covers_component(self, component: int) -> bool:
        """True when the basis has a unit leading term in the given component."""
        return any(comp == component and sum(mono) == 0 for comp, mono in self.leads)


class GroebnerService:
    """Gröbner bases, normal forms, dimensions and monomial primes."""

    def __init__(self):
        """Initialize the service with an empty per-session basis cache."""
        self._cache: Dict[Tuple, GroebnerBasis] = {}
        self._lock = threading.Lock()

    def module_basis(self, vectors: Iterable[Vector], shifts: Sequence[int],
                     characteristic: int, position_first: bool = False) -> ModuleBasis:
        """
        Compute the reduced Gröbner basis of the submodule generated by ``vectors``.

        Args:
            vectors: Generators as sparse vectors.
            shifts: Degrees of the free generators, one per component.
            characteristic: The field characteristic.
            position_first: Use the position-over-term elimination order.

        Returns:
            The reduced basis.
        """
        order = TermOrder(shifts, position_first)
        engine = BuchbergerEngine(order, characteristic, rank_one=len(shifts) == 1)
        engine.add(v for v in vectors if v)
        engine.complete()
        return engine.reduced_basis()

    def engine(self, shifts: Sequence[int], characteristic: int,
               position_first: bool = False) -> BuchbergerEngine:
        """An empty incremental engine, for callers that grow a basis step by step."""
        return BuchbergerEngine(TermOrder(shifts, position_first), characteristic,
                                rank_one=len(shifts) == 1)

    def gb_compute(self, ideal: Ideal, order: str = "grevlex") -> GroebnerBasis:
        """
        Compute the reduced Gröbner basis of an ideal.

        Args:
            ideal: The ideal.
            order: Monomial order tag; only ``grevlex`` is supported.

        Returns:
            The reduced Gröbner basis.

        Raises:
            UnsupportedInputError: If another monomial order is requested.
        """
        if order != "grevlex":
            raise UnsupportedInputError(f"Unsupported monomial order: {order}")
        key = (ideal.ring, frozenset(ideal.generators))
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        ring = ideal.ring
        basis = self.module_basis((polynomial_vector(g) for g in ideal.generators),
                                  (0,), ring.characteristic)
        elements = tuple(
            Polynomial.from_clean_terms(ring, {mono: c for (_, mono), c in vec.items()})
            for vec in basis.elements
        )
        result = GroebnerBasis(ring, elements, order)
        with self._lock:
            self._cache[key] = result
        return result

    def normal_form(self, f: Polynomial, gb: GroebnerBasis) -> Polynomial:
        """
        Reduce a polynomial modulo a Gröbner basis.

        Raises:
            StructuralError: If ``f`` and ``gb`` live over different rings.
        """
        if f.ring != gb.ring:
            raise StructuralError("Polynomial and Gröbner basis live over different rings")
        basis = ModuleBasis(TermOrder((0,)), f.ring.characteristic,
                            [polynomial_vector(g) for g in gb.elements],
                            [(0, g.leading_monomial()) for g in gb.elements])
        remainder = basis.reduce(polynomial_vector(f))
        return Polynomial.from_clean_terms(f.ring, {mono: c for (_, mono), c in remainder.items()})

    def contains(self, ideal: Ideal, f: Polynomial) -> bool:
        return self.normal_form(f, self.gb_compute(ideal)).is_zero()

    def ideal_contains(self, big: Ideal, small: Ideal) -> bool:
        """True when every generator of ``small`` lies in ``big``."""
        gb = self.gb_compute(big)
        return all(self.normal_form(g, gb).is_zero() for g in small.generators)

    def ideals_equal(self, a: Ideal, b: Ideal) -> bool:
        return self.gb_compute(a).elements == self.gb_compute(b).elements

    def sum_ideals(self, *ideals: Ideal) -> Ideal:
        """a + b + ..., generated by its reduced Gröbner basis."""
        if not ideals:
            raise StructuralError("sum_ideals needs at least one ideal")
        total = ideals[0]
        for other in ideals[1:]:
            total = total + other
        return self.gb_compute(total).ideal()

    def s_polynomial(self, f: Polynomial, g: Polynomial) -> Polynomial:
        lf, lg = f.leading_monomial(), g.leading_monomial()
        lcm = mono_lcm(lf, lg)
        ring = f.ring
        left = ring.monomial(mono_div(lcm, lf)) * f.monic()
        right = ring.monomial(mono_div(lcm, lg)) * g.monic()
        return left - right

    def buchberger_criterion_holds(self, gb: GroebnerBasis) -> bool:
        """Check that every S-polynomial of basis pairs reduces to zero."""
        return all(self.normal_form(self.s_polynomial(f, g), gb).is_zero()
                   for f, g in combinations(gb.elements, 2))

    def lift(self, f: Polynomial, ideal: Ideal) -> Optional[Tuple[Polynomial, ...]]:
        """
        Express ``f`` in terms of the generators of ``ideal``.

        Returns:
            Coefficients c with f = Σ cᵢ·gᵢ, or None when f is not in the ideal.
        """
        ring = ideal.ring
        gens = ideal.generators
        if f.is_zero():
            return tuple(ring.zero() for _ in gens)
        p = ring.characteristic
        degrees = [0] + [g.total_degree() for g in gens]
        tagged = []
        for i, g in enumerate(gens):
            vec = polynomial_vector(g)
            vec[(i + 1, ring.zero_monomial)] = 1
            tagged.append(vec)
        basis = self.module_basis(tagged, degrees, p, position_first=True)
        remainder = basis.reduce(polynomial_vector(f))
        if any(comp == 0 for comp, _ in remainder):
            return None
        coefficients = scale_vector(remainder, -1, p)
        column = vector_to_column(ring, {(c - 1, m): v for (c, m), v in coefficients.items()},
                                  len(gens))
        return column

    def ideal_dimension(self, gb: GroebnerBasis) -> int:
        """
        Krull dimension of P/I from the leading monomials of a Gröbner basis of I.

        Returns:
            The size of a largest set of variables containing no leading-monomial support;
            -1 for the unit ideal.
        """
        if gb.is_unit:
            return -1
        n = gb.ring.nvars
        supports = [frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials]
        for size in range(n, -1, -1):
            for subset in combinations(range(n), size):
                chosen = set(subset)
                if not any(support <= chosen for support in supports):
                    return size
        return 0

    def ideal_krull_dimension(self, ideal: Ideal) -> int:
        return self.ideal_dimension(self.gb_compute(ideal))

    def monomial_minimal_primes(self, ideal: Ideal) -> List[Ideal]:
        """
        Minimal primes of a monomial ideal as minimal transversals of generator supports.

        Raises:
            UnsupportedInputError: If a generator is not a monomial.
        """
        if not ideal.is_monomial:
            raise UnsupportedInputError(
                f"Minimal primes are only computed for monomial ideals, got {ideal}"
            )
        ring = ideal.ring
        supports = {g.support() for g in ideal.generators}
        if any(not support for support in supports):
            return []
        covers: List[frozenset] = []
        for size in range(ring.nvars + 1):
            for subset in combinations(range(ring.nvars), size):
                chosen = frozenset(subset)
                if any(cover <= chosen for cover in covers):
                    continue
                if all(support & chosen for support in supports):
                    covers.append(chosen)
        return [Ideal(ring, tuple(ring.gen(i) for i in sorted(cover))) for cover in covers]
