"""
Polynomial rings over prime fields, their elements and ideals.
"""
from __future__ import annotations

import keyword
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from src.dg_cohen_macaulay.errors import PolynomialSyntaxError, StructuralError

Monomial = Tuple[int, ...]

DEFAULT_CHARACTERISTIC = 32003

_IDENTIFIER = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')
_ALLOWED_TEXT = re.compile(r'^[A-Za-z0-9_+\-*^()\s]*$')
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def grevlex_key(mono: Monomial) -> Tuple:
    """Sort key for graded reverse lexicographic order; larger key means larger monomial."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field, a prime field of the given characteristic."""
    characteristic: int = DEFAULT_CHARACTERISTIC

    def __post_init__(self):
        if not isinstance(self.characteristic, int) or not sympy.isprime(self.characteristic):
            raise StructuralError(
                f"Field characteristic must be a prime integer, got {self.characteristic!r}"
            )

    def reduce(self, value: int) -> int:
        """Reduce an integer into the range [0, p)."""
        return value % self.characteristic

    def inverse(self, value: int) -> int:
        """Multiplicative inverse modulo p."""
        return pow(value, -1, self.characteristic)

    def symmetric(self, value: int) -> int:
        """Representative of ``value`` in (-p/2, p/2], used for display."""
        value %= self.characteristic
        return value - self.characteristic if value > self.characteristic // 2 else value


@dataclass(frozen=True)
class PolynomialRing:
    """Standard graded polynomial ring k[x₁..xₙ] with every variable in degree 1."""
    field: FieldSpec
    variables: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        seen = set()
        for name in self.variables:
            if not _IDENTIFIER.fullmatch(name) or keyword.iskeyword(name):
                raise StructuralError(f"Invalid variable name: {name!r}")
            if name in seen:
                raise StructuralError(f"Duplicate variable name: {name!r}")
            seen.add(name)

    @classmethod
    def from_names(cls, names: Sequence[str], characteristic: int = DEFAULT_CHARACTERISTIC) -> 'PolynomialRing':
        """Create a ring from variable names and a characteristic."""
        return cls(FieldSpec(characteristic), tuple(names))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    @property
    def zero_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> 'Polynomial':
        return Polynomial(self, {})

    def one(self) -> 'Polynomial':
        return self.constant(1)

    def constant(self, value: int) -> 'Polynomial':
        return Polynomial(self, {self.zero_monomial: value})

    def monomial(self, exponents: Sequence[int], coefficient: int = 1) -> 'Polynomial':
        if len(exponents) != self.nvars:
            raise StructuralError(
                f"Exponent vector {tuple(exponents)} does not match {self.nvars} variables"
            )
        return Polynomial(self, {tuple(exponents): coefficient})

    def gen(self, which: Union[int, str]) -> 'Polynomial':
        """The variable with the given index or name."""
        index = self.variables.index(which) if isinstance(which, str) else which
        exponents = [0] * self.nvars
        exponents[index] = 1
        return self.monomial(exponents)

    def gens(self) -> Tuple['Polynomial', ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def irrelevant_ideal(self) -> 'Ideal':
        return Ideal(self, self.gens())

    def parse(self, text: str, path: Optional[str] = None) -> 'Polynomial':
        """
        Parse a polynomial written with ``+ - * ^``, integer literals and declared variables.

        Args:
            text: The polynomial text, e.g. ``"x*y^2 - 3*z"``.
            path: Location of the text inside a problem file, for diagnostics.

        Returns:
            The polynomial with coefficients reduced modulo the characteristic.

        Raises:
            PolynomialSyntaxError: If the text is not a polynomial in the declared variables.
        """
        if not isinstance(text, str):
            raise PolynomialSyntaxError(f"Polynomial must be a string, got {type(text).__name__}",
                                        text=str(text), path=path)
        if not text.strip():
            raise PolynomialSyntaxError("Empty polynomial", text=text, position=0, path=path)
        if not _ALLOWED_TEXT.match(text):
            bad = next(i for i, ch in enumerate(text) if not _ALLOWED_TEXT.match(ch))
            raise PolynomialSyntaxError(f"Unexpected character {text[bad]!r}",
                                        text=text, position=bad, path=path)
        for match in _IDENTIFIER.finditer(text):
            if match.group(0) not in self.variables:
                raise PolynomialSyntaxError(f"Undeclared variable {match.group(0)!r}",
                                            text=text, position=match.start(), path=path)

        symbols = [sympy.Symbol(name) for name in self.variables]
        try:
            expr = parse_expr(text, local_dict=dict(zip(self.variables, symbols)),
                              transformations=_TRANSFORMATIONS)
            if symbols:
                poly = sympy.Poly(expr, *symbols, domain="ZZ")
                terms = {tuple(int(e) for e in mono): int(coeff) for mono, coeff in poly.terms()}
            else:
                value = sympy.Integer(expr)
                terms = {(): int(value)}
        except Exception as exc:  # sympy reports syntax, tokenizer and coercion failures as assorted types
            raise PolynomialSyntaxError(f"Cannot parse polynomial {text!r}: {exc}",
                                        text=text, path=path)
        return Polynomial(self, terms)

    def __str__(self) -> str:
        return f"GF({self.characteristic})[{', '.join(self.variables)}]"


class Polynomial:
    """An element of a PolynomialRing; terms map exponent vectors to nonzero coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Optional[Mapping[Monomial, int]] = None):
        p = ring.characteristic
        cleaned: Dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != ring.nvars:
                raise StructuralError(
                    f"Exponent vector {mono} does not match {ring.nvars} variables"
                )
            value = (cleaned.get(mono, 0) + coeff) % p
            if value:
                cleaned[mono] = value
            else:
                cleaned.pop(mono, None)
        self.ring = ring
        self._terms = cleaned
        self._hash = None

    @classmethod
    def from_clean_terms(cls, ring: PolynomialRing, terms: Dict[Monomial, int]) -> 'Polynomial':
        """Wrap a term dictionary already reduced modulo p with no zero entries."""
        poly = cls.__new__(cls)
        poly.ring = ring
        poly._terms = terms
        poly._hash = None
        return poly

    @property
    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(mono) == 0 for mono in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(mono) for mono in self._terms}) <= 1

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(mono) for mono in self._terms), default=-1)

    def support(self) -> frozenset:
        """Indices of the variables occurring in the polynomial."""
        return frozenset(i for mono in self._terms for i, e in enumerate(mono) if e)

    def leading_monomial(self) -> Optional[Monomial]:
        if not self._terms:
            return None
        return max(self._terms, key=grevlex_key)

    def leading_coefficient(self) -> int:
        mono = self.leading_monomial()
        return 0 if mono is None else self._terms[mono]

    def monic(self) -> 'Polynomial':
        if self.is_zero():
            return self
        return self.scale(self.ring.field.inverse(self.leading_coefficient()))

    def scale(self, factor: int) -> 'Polynomial':
        return Polynomial(self.ring, {m: c * factor for m, c in self._terms.items()})

    def _coerce(self, other) -> 'Polynomial':
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise StructuralError("Polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, int] = {}
        p = self.ring.characteristic
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                terms[mono] = (terms.get(mono, 0) + c1 * c2) % p
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise StructuralError("Negative powers are not polynomials")
        result = self.ring.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono in sorted(self._terms, key=grevlex_key, reverse=True):
            coeff = self.ring.field.symmetric(self._terms[mono])
            factors = []
            for name, exp in zip(self.ring.variables, mono):
                if exp == 1:
                    factors.append(name)
                elif exp > 1:
                    factors.append(f"{name}^{exp}")
            body = "*".join(factors)
            magnitude = abs(coeff)
            if not body:
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, text))
        first_sign, first_text = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self})"


@dataclass(frozen=True)
class Ideal:
    """An ideal given by generators; zero generators are dropped."""
    ring: PolynomialRing
    generators: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if not isinstance(g, Polynomial) or g.ring != self.ring:
                raise StructuralError("Ideal generators must belong to the ideal's ring")
        object.__setattr__(self, "generators", tuple(g for g in gens if not g.is_zero()))

    @classmethod
    def from_strings(cls, ring: PolynomialRing, texts: Iterable[str], path: str = "ideal") -> 'Ideal':
        """Parse generator strings into an ideal."""
        return cls(ring, tuple(ring.parse(t, path=f"{path}[{i}]") for i, t in enumerate(texts)))

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    @property
    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    @property
    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_variable_generated(self) -> bool:
        """True when every generator is a nonzero multiple of a single variable."""
        return all(g.is_monomial() and g.total_degree() == 1 for g in self.generators)

    def __add__(self, other: 'Ideal') -> 'Ideal':
        if other.ring != self.ring:
            raise StructuralError("Cannot add ideals of different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def __str__(self) -> str:
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis in graded reverse lexicographic order."""
    ring: PolynomialRing
    elements: Tuple[Polynomial, ...] = ()
    order: str = "grevlex"

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.elements)

    @property
    def leading_monomials(self) -> Tuple[Monomial, ...]:
        return tuple(g.leading_monomial() for g in self.elements)

    @property
    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.elements)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.elements)


@dataclass(frozen=True)
class QuotientRing:
    """R = P/I for a homogeneous ideal I of the polynomial ring P."""
    ring: PolynomialRing
    ideal: Ideal = field(default=None)

    def __post_init__(self):
        if self.ideal is None:
            object.__setattr__(self, "ideal", Ideal(self.ring, ()))
        if self.ideal.ring != self.ring:
            raise StructuralError("Quotient ideal belongs to a different ring")

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def __str__(self) -> str:
        if self.ideal.is_zero_ideal:
            return str(self.ring)
        return f"{self.ring}/{self.ideal}"
