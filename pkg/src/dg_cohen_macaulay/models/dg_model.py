"""
DG-ring and DG-module models: a construction recipe, its underlying complex over the
base ring and the ideal J with H⁰ = P/J.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

from src.dg_cohen_macaulay.models.algebra import Ideal, Polynomial, QuotientRing
from src.dg_cohen_macaulay.models.homalg import Complex, PresentedModule


class Orientation(Enum):
    NON_POSITIVE = "non-positive"
    NON_NEGATIVE = "non-negative"


@dataclass(frozen=True)
class KoszulConstruction:
    """Iterated cone of multiplication maps, R//(x₁..x_r)."""
    elements: Tuple[Polynomial, ...]
    kind: str = field(default="koszul", init=False)

    def describe(self) -> str:
        return "Kos(R; " + ", ".join(str(e) for e in self.elements) + ")"


@dataclass(frozen=True)
class TrivialExtensionConstruction:
    """R ⋉ M[s] with s ≥ 1."""
    module: PresentedModule
    shift: int
    kind: str = field(default="trivial_extension", init=False)

    def describe(self) -> str:
        return f"R ⋉ M[{self.shift}]"


@dataclass(frozen=True)
class NonNegTrivialExtensionConstruction:
    """R ⋉ M[s] with s ≤ -1, so that M sits in positive degree |s|."""
    module: PresentedModule
    shift: int
    kind: str = field(default="nonneg_trivial_extension", init=False)

    def describe(self) -> str:
        return f"R ⋉ M[{self.shift}]"


@dataclass(frozen=True)
class DerivedFiberConstruction:
    """k ⊗ᴸ_P B modelled by the Koszul complex on all variables."""
    kind: str = field(default="derived_fiber", init=False)

    def describe(self) -> str:
        return "k ⊗ᴸ_P R"


@dataclass(frozen=True)
class ExplicitComplexConstruction:
    """A user-supplied complex whose DG structure is asserted, not derived."""
    kind: str = field(default="complex", init=False)

    def describe(self) -> str:
        return "explicit complex"


@dataclass(frozen=True)
class DGQuotientConstruction:
    """A//(x₁..x_r) over a model that is not itself Koszul."""
    parent: Any
    elements: Tuple[Polynomial, ...]
    kind: str = field(default="dg_quotient", init=False)

    def describe(self) -> str:
        return f"({self.parent.describe()})//(" + ", ".join(str(e) for e in self.elements) + ")"


Construction = Union[
    KoszulConstruction,
    TrivialExtensionConstruction,
    NonNegTrivialExtensionConstruction,
    DerivedFiberConstruction,
    ExplicitComplexConstruction,
    DGQuotientConstruction,
]


@dataclass(frozen=True)
class CohomologyEntry:
    """A nonzero cohomology module with its Krull dimension."""
    degree: int
    module: PresentedModule
    krull_dim: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "generator_degrees": list(self.module.degrees),
            "relations": [[str(e) for e in col] for col in self.module.relations],
            "krull_dim": self.krull_dim,
        }


@dataclass(eq=False)
class DGRingModel:
    """
    A DG-ring presented by its construction and underlying complex over R = P/I.

    Derived tables are memoized on the instance behind a lock so that concurrent readers
    observe a single computation.
    """
    base: QuotientRing
    construction: Construction
    complex: Complex
    h0_ideal: Ideal
    orientation: Orientation = Orientation.NON_POSITIVE
    _memo: Dict[str, Any] = field(default_factory=dict, repr=False)
    _lock: Any = field(default_factory=threading.RLock, repr=False)

    @property
    def ring(self):
        return self.base.ring

    @property
    def is_asserted(self) -> bool:
        """True when the DG structure was supplied by the user rather than constructed."""
        kind = self.construction.kind
        parent = getattr(self.construction, "parent", None)
        return kind == "complex" or (parent is not None and parent.kind == "complex")

    def memoized(self, key: str, compute):
        with self._lock:
            if key not in self._memo:
                self._memo[key] = compute()
            return self._memo[key]

    def describe(self) -> str:
        return f"{self.construction.describe()} over {self.base}"


@dataclass(eq=False)
class DGModuleModel:
    """A DG-module over a DGRingModel, represented by its underlying complex."""
    parent: DGRingModel
    complex: Complex
    label: str = "M"
    _memo: Dict[str, Any] = field(default_factory=dict, repr=False)
    _lock: Any = field(default_factory=threading.RLock, repr=False)

    @property
    def ring(self):
        return self.parent.ring

    @property
    def orientation(self) -> Orientation:
        return self.parent.orientation

    @property
    def h0_ideal(self) -> Ideal:
        return self.parent.h0_ideal

    def memoized(self, key: str, compute):
        with self._lock:
            if key not in self._memo:
                self._memo[key] = compute()
            return self._memo[key]

    def describe(self) -> str:
        return f"{self.label} over {self.parent.describe()}"


def amplitude_data(degrees: List[int]) -> Tuple[float, float, float]:
    """(sup, inf, amp) of a set of nonzero degrees; the empty set gives (-inf, inf, -inf)."""
    if not degrees:
        return float("-inf"), float("inf"), float("-inf")
    return max(degrees), min(degrees), max(degrees) - min(degrees)
