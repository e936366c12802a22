"""
Service building DG-ring and DG-module models and their cohomology tables.
"""
import logging
from typing import List, Optional, Sequence

from src.dg_cohen_macaulay.errors import (
    DegenerateInputError,
    PreconditionError,
    StructuralError,
    UnsupportedInputError,
)
from src.dg_cohen_macaulay.models.algebra import Ideal, Polynomial, QuotientRing
from src.dg_cohen_macaulay.models.dg_model import (
    CohomologyEntry,
    DerivedFiberConstruction,
    DGModuleModel,
    DGQuotientConstruction,
    DGRingModel,
    ExplicitComplexConstruction,
    KoszulConstruction,
    NonNegTrivialExtensionConstruction,
    Orientation,
    TrivialExtensionConstruction,
    amplitude_data,
)
from src.dg_cohen_macaulay.models.homalg import Complex, PresentedModule
from src.dg_cohen_macaulay.services.homalg_service import HomologicalAlgebraService

logger = logging.getLogger(__name__)


class DGConstructionService:
    """Builds models from constructions and exposes their cohomology."""

    def __init__(self, homalg: Optional[HomologicalAlgebraService] = None):
        """
        Initialize the service.

        Args:
            homalg: Homological engine; a fresh one by default.
        """
        self.homalg = homalg or HomologicalAlgebraService()
        self.groebner = self.homalg.groebner

    # ------------------------------------------------------------------ helpers

    @staticmethod
    def ring_module(base: QuotientRing) -> PresentedModule:
        """R = P/I as a cyclic module generated in degree 0."""
        return PresentedModule.cyclic(base.ring, base.ideal)

    def _check_elements(self, elements: Sequence[Polynomial]) -> None:
        for element in elements:
            if element.is_zero() or not element.is_homogeneous() or element.total_degree() < 1:
                raise UnsupportedInputError(
                    f"Element {element} must be homogeneous of positive degree"
                )

    def _quotient_module(self, base: QuotientRing, module: PresentedModule) -> PresentedModule:
        if module.ring != base.ring:
            raise StructuralError("Module and base ring live over different polynomial rings")
        if not module.is_homogeneous:
            raise UnsupportedInputError("Module presentation is not homogeneous")
        return module.over_quotient(base.ideal)

    # ------------------------------------------------------------------ constructions

    def build_koszul_dg(self, base: QuotientRing, elements: Sequence[Polynomial]) -> DGRingModel:
        """
        Koszul complex of the elements over R as an iterated cone, in degrees [-r, 0].

        Raises:
            UnsupportedInputError: If an element is inhomogeneous or of degree 0.
        """
        elements = tuple(elements)
        self._check_elements(elements)
        complex_ = Complex.concentrated(self.ring_module(base), 0)
        for element in elements:
            complex_ = self.homalg.cone(self.homalg.multiplication_map(complex_, element))
        model = DGRingModel(base, KoszulConstruction(elements), complex_,
                            base.ideal + Ideal(base.ring, elements))
        logger.info("Built Koszul model on %d elements", len(elements))
        self.validate_model(model)
        return model

    def build_trivial_extension(self, base: QuotientRing, module: PresentedModule,
                                shift: int) -> DGRingModel:
        """
        R ⋉ M[s]: R in degree 0 and M in degree -s with zero differential.

        Raises:
            PreconditionError: If s ≤ 0.
            DegenerateInputError: If M is the zero module.
        """
        if shift <= 0:
            raise PreconditionError(
                f"Trivial extensions need shift ≥ 1 (got {shift}); "
                "use build_nonneg_trivial_extension for negative shifts"
            )
        module = self._quotient_module(base, module)
        if self.homalg.is_zero_module(module):
            raise DegenerateInputError("Trivial extension by the zero module")
        terms = {0: self.ring_module(base), -shift: module}
        complex_ = self.homalg.make_complex(terms, {})
        model = DGRingModel(base, TrivialExtensionConstruction(module, shift), complex_, base.ideal)
        logger.info("Built trivial extension with shift %d", shift)
        self.validate_model(model)
        return model

    def build_nonneg_trivial_extension(self, base: QuotientRing, module: PresentedModule,
                                       shift: int) -> DGRingModel:
        """
        Non-negative model: R in degree 0 and M in degree |s| for s ≤ -1.

        Raises:
            DegenerateInputError: If s = 0 or M is zero.
            PreconditionError: If s > 0.
        """
        if shift == 0:
            raise DegenerateInputError("Shift 0 does not define a trivial extension")
        if shift > 0:
            raise PreconditionError(
                f"Non-negative trivial extensions need shift ≤ -1 (got {shift})"
            )
        module = self._quotient_module(base, module)
        if self.homalg.is_zero_module(module):
            raise DegenerateInputError("Trivial extension by the zero module")
        terms = {0: self.ring_module(base), -shift: module}
        complex_ = self.homalg.make_complex(terms, {})
        model = DGRingModel(base, NonNegTrivialExtensionConstruction(module, shift), complex_,
                            base.ideal, Orientation.NON_NEGATIVE)
        self.validate_model(model)
        return model

    def build_derived_fiber(self, base: QuotientRing) -> DGRingModel:
        """k ⊗ᴸ_P B as the Koszul complex Kos(B; x₁..xₙ)."""
        koszul = self.build_koszul_dg(base, base.ring.gens())
        return DGRingModel(base, DerivedFiberConstruction(), koszul.complex, koszul.h0_ideal)

    def build_explicit(self, base: QuotientRing, complex_: Complex, h0_ideal: Ideal,
                       orientation: Optional[Orientation] = None) -> DGRingModel:
        """
        A model from a user complex with an asserted H⁰ ideal.

        Raises:
            StructuralError: If J does not annihilate the cohomology, or for non-positive
                models if H⁰ is not isomorphic to P/J.
        """
        if orientation is None:
            orientation = Orientation.NON_NEGATIVE if complex_.lo >= 0 and complex_.hi > 0 \
                else Orientation.NON_POSITIVE
        if any(term.ring != base.ring for term in complex_.terms):
            raise StructuralError("Complex and base ring live over different polynomial rings")
        model = DGRingModel(base, ExplicitComplexConstruction(), complex_, h0_ideal, orientation)
        self.validate_model(model)
        h0 = self.homalg.cohomology_at(complex_, 0)
        if not self.homalg.are_isomorphic(h0, PresentedModule.cyclic(base.ring, h0_ideal)):
            raise StructuralError("H⁰ of the complex is not isomorphic to P/J")
        logger.warning("Model built from an explicit complex; its DG structure is asserted")
        return model

    def build_dg_module(self, parent: DGRingModel, complex_: Complex,
                        label: str = "M") -> DGModuleModel:
        """
        Wrap a complex as a DG-module over ``parent``.

        Raises:
            DegenerateInputError: If the complex is acyclic.
            StructuralError: If J does not annihilate some cohomology module.
        """
        module = DGModuleModel(parent, complex_, label)
        table = self.cohomology_table(module)
        if not table:
            raise DegenerateInputError("DG-module has no cohomology")
        self._check_annihilated(parent.h0_ideal, table)
        return module

    def module_over(self, parent: DGRingModel, module: PresentedModule, degree: int = 0,
                    label: str = "M") -> DGModuleModel:
        """An H⁰(A)-module placed in one degree, regarded as a DG-module over A."""
        module = module.over_quotient(parent.h0_ideal)
        return self.build_dg_module(parent, Complex.concentrated(module, degree), label)

    def dg_quotient(self, model: DGRingModel, element: Polynomial) -> DGRingModel:
        """
        A//x̄ as the cone of multiplication by x̄.

        Raises:
            UnsupportedInputError: If x̄ is inhomogeneous or of degree 0.
            PreconditionError: For non-negative models.
        """
        self._check_elements([element])
        if model.orientation is Orientation.NON_NEGATIVE:
            raise PreconditionError("DG quotients are defined for non-positive models")
        complex_ = self.homalg.cone(self.homalg.multiplication_map(model.complex, element))
        construction = model.construction
        if isinstance(construction, KoszulConstruction):
            construction = KoszulConstruction(construction.elements + (element,))
        elif isinstance(construction, DGQuotientConstruction):
            construction = DGQuotientConstruction(construction.parent,
                                                  construction.elements + (element,))
        else:
            construction = DGQuotientConstruction(construction, (element,))
        quotient = DGRingModel(model.base, construction, complex_,
                               model.h0_ideal + Ideal(model.ring, (element,)))
        self.validate_model(quotient)
        return quotient

    def canonical_module(self, base: QuotientRing) -> PresentedModule:
        """
        ω_R = Ext^{n-d}_P(R, P) for R = P/I of dimension d.

        Raises:
            DegenerateInputError: For the zero ring.
        """
        ring = base.ring
        d = self.groebner.ideal_krull_dimension(base.ideal)
        if d < 0:
            raise DegenerateInputError("The zero ring has no canonical module")
        ext = self.homalg.ext_profile(Complex.concentrated(self.ring_module(base), 0))
        omega = ext.get(ring.nvars - d)
        if omega is None:
            raise StructuralError("Ext^{n-d}(R, P) vanished; the ring is not equidimensional here")
        return omega.over_quotient(base.ideal)

    # ------------------------------------------------------------------ cohomology

    def cohomology_table(self, model) -> List[CohomologyEntry]:
        """Nonzero cohomology modules of a model's underlying complex with Krull dimensions."""
        def compute():
            entries = []
            complex_ = model.complex
            for degree in range(complex_.lo, complex_.hi + 1):
                module = self.homalg.cohomology_at(complex_, degree)
                if self.homalg.is_zero_module(module):
                    continue
                entries.append(CohomologyEntry(degree, module,
                                               self.homalg.module_krull_dim(module)))
            return entries
        return model.memoized("cohomology_table", compute)

    def cohomology_degrees(self, model) -> List[int]:
        return [entry.degree for entry in self.cohomology_table(model)]

    def amplitude(self, model):
        """(sup, inf, amp) of the model's cohomology."""
        return amplitude_data(self.cohomology_degrees(model))

    def dim_h0(self, model) -> int:
        """Krull dimension of H⁰(A) = P/J."""
        parent = getattr(model, "parent", model)
        return parent.memoized("dim_h0",
                               lambda: self.groebner.ideal_krull_dimension(parent.h0_ideal))

    def _check_annihilated(self, ideal: Ideal, table: List[CohomologyEntry]) -> None:
        for entry in table:
            ann = self.homalg.annihilator(entry.module)
            if not self.groebner.ideal_contains(ann, ideal):
                raise StructuralError(
                    f"H^{entry.degree} is not annihilated by the H⁰ ideal {ideal}"
                )

    def validate_model(self, model: DGRingModel) -> None:
        """
        Check that J annihilates every cohomology module and, for non-positive models,
        that sup = 0.

        Raises:
            StructuralError: If a check fails.
        """
        table = self.cohomology_table(model)
        self._check_annihilated(model.h0_ideal, table)
        if model.orientation is Orientation.NON_POSITIVE and table:
            if max(entry.degree for entry in table) > 0:
                raise StructuralError("Non-positive model has cohomology in positive degree")
