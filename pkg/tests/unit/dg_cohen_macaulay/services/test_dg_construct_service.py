"""
Unit tests for the DGConstructionService class.
"""
import unittest

from src.dg_cohen_macaulay.errors import (
    DegenerateInputError,
    PreconditionError,
    StructuralError,
    UnsupportedInputError,
)
from src.dg_cohen_macaulay.models.algebra import Ideal, QuotientRing
from src.dg_cohen_macaulay.models.dg_model import (
    DGQuotientConstruction,
    KoszulConstruction,
    Orientation,
)
from src.dg_cohen_macaulay.models.homalg import Complex, PresentedModule
from tests.unit.dg_cohen_macaulay.helpers import (
    cyclic,
    ideal,
    poly_ring,
    quotient,
    shared_cm_service,
)


class TestDGConstructionService(unittest.TestCase):
    """Test cases for model constructions and cohomology tables."""

    @classmethod
    def setUpClass(cls):
        """Set up the shared services."""
        cls.service = shared_cm_service().construct
        cls.homalg = cls.service.homalg

    def setUp(self):
        """Set up test fixtures."""
        self.ring = poly_ring("x", "y")
        self.x, self.y = self.ring.gens()
        self.node = quotient(self.ring, "x*y")
        self.plane = QuotientRing(self.ring)

    def test_ring_model(self):
        """Test that the empty Koszul complex is R itself."""
        model = self.service.build_koszul_dg(self.node, ())
        self.assertEqual(self.service.cohomology_degrees(model), [0])
        self.assertEqual(self.service.dim_h0(model), 1)
        self.assertIs(model.orientation, Orientation.NON_POSITIVE)

    def test_koszul_on_zero_divisor(self):
        """Test Kos(k[x, y]/(xy); x)."""
        model = self.service.build_koszul_dg(self.node, [self.x])
        self.assertEqual(self.service.cohomology_degrees(model), [-1, 0])
        self.assertEqual(self.service.amplitude(model), (0, -1, 1))
        self.assertTrue(self.service.groebner.ideals_equal(model.h0_ideal, ideal(self.ring, "x")))
        self.assertEqual(self.service.dim_h0(model), 1)

    def test_koszul_on_regular_sequence(self):
        """Test that a regular sequence leaves only H⁰."""
        model = self.service.build_koszul_dg(self.plane, [self.x, self.y])
        self.assertEqual(self.service.cohomology_degrees(model), [0])
        self.assertEqual(self.service.dim_h0(model), 0)

    def test_koszul_rejects_bad_elements(self):
        """Test that elements must be homogeneous of positive degree."""
        with self.assertRaises(UnsupportedInputError):
            self.service.build_koszul_dg(self.plane, [self.ring.parse("x + y^2")])
        with self.assertRaises(UnsupportedInputError):
            self.service.build_koszul_dg(self.plane, [self.ring.one()])
        with self.assertRaises(UnsupportedInputError):
            self.service.build_koszul_dg(self.plane, [self.ring.zero()])

    def test_trivial_extension(self):
        """Test R ⋉ M[s] for M = R/(x)."""
        model = self.service.build_trivial_extension(self.node, cyclic(self.ring, "x"), 1)
        table = self.service.cohomology_table(model)
        self.assertEqual([entry.degree for entry in table], [-1, 0])
        self.assertEqual([entry.krull_dim for entry in table], [1, 1])
        self.assertEqual(model.construction.kind, "trivial_extension")

    def test_trivial_extension_preconditions(self):
        """Test shift and module checks."""
        with self.assertRaises(PreconditionError):
            self.service.build_trivial_extension(self.node, cyclic(self.ring, "x"), 0)
        with self.assertRaises(DegenerateInputError):
            self.service.build_trivial_extension(self.node, cyclic(self.ring, "1"), 1)
        with self.assertRaises(UnsupportedInputError):
            self.service.build_trivial_extension(self.node, cyclic(self.ring, "x + y^2"), 1)
        other = poly_ring("x", "y", "z")
        with self.assertRaises(StructuralError):
            self.service.build_trivial_extension(self.node, PresentedModule.free(other, [0]), 1)

    def test_nonneg_trivial_extension(self):
        """Test the non-negative trivial extension and its shift checks."""
        line = quotient(poly_ring("x"))
        model = self.service.build_nonneg_trivial_extension(
            line, PresentedModule.free(line.ring, [0]), -1)
        self.assertIs(model.orientation, Orientation.NON_NEGATIVE)
        self.assertEqual(self.service.cohomology_degrees(model), [0, 1])
        with self.assertRaises(DegenerateInputError):
            self.service.build_nonneg_trivial_extension(line, PresentedModule.free(line.ring, [0]), 0)
        with self.assertRaises(PreconditionError):
            self.service.build_nonneg_trivial_extension(line, PresentedModule.free(line.ring, [0]), 2)

    def test_derived_fiber(self):
        """Test k ⊗ᴸ k[x, y]/(x²)."""
        model = self.service.build_derived_fiber(quotient(self.ring, "x^2"))
        self.assertEqual(self.service.cohomology_degrees(model), [-1, 0])
        self.assertEqual(self.service.dim_h0(model), 0)
        self.assertEqual(model.construction.kind, "derived_fiber")

    def test_explicit_complex(self):
        """Test an explicit Koszul complex and the H⁰ check."""
        node_rel = ((self.ring.parse("x*y"),),)
        terms = {-1: PresentedModule(self.ring, (1,), node_rel),
                 0: PresentedModule(self.ring, (0,), node_rel)}
        complex_ = self.homalg.make_complex(terms, {-1: ((self.x,),)})
        model = self.service.build_explicit(self.node, complex_, ideal(self.ring, "x"))
        self.assertTrue(model.is_asserted)
        self.assertIs(model.orientation, Orientation.NON_POSITIVE)
        with self.assertRaises(StructuralError):
            self.service.build_explicit(self.node, complex_, ideal(self.ring, "y"))

    def test_explicit_complex_positive_cohomology(self):
        """Test that non-positive models may not have positive cohomology."""
        complex_ = self.homalg.make_complex({0: cyclic(self.ring, "x"), 1: cyclic(self.ring, "x")}, {})
        with self.assertRaises(StructuralError):
            self.service.build_explicit(self.plane, complex_, ideal(self.ring, "x"),
                                        Orientation.NON_POSITIVE)
        model = self.service.build_explicit(self.plane, complex_, ideal(self.ring, "x"))
        self.assertIs(model.orientation, Orientation.NON_NEGATIVE)

    def test_dg_quotient(self):
        """Test DG quotients and how their constructions compose."""
        ring_model = self.service.build_koszul_dg(self.node, ())
        quotient_model = self.service.dg_quotient(ring_model, self.x)
        self.assertIsInstance(quotient_model.construction, KoszulConstruction)
        self.assertEqual(self.service.cohomology_degrees(quotient_model), [-1, 0])

        extension = self.service.build_trivial_extension(self.node, cyclic(self.ring, "x"), 1)
        by_y = self.service.dg_quotient(extension, self.y)
        self.assertIsInstance(by_y.construction, DGQuotientConstruction)
        # y is regular but H⁰ keeps dimension one
        self.assertEqual(self.service.dim_h0(by_y), 1)
        again = self.service.dg_quotient(by_y, self.x)
        self.assertEqual(len(again.construction.elements), 2)

    def test_dg_quotient_rejects_non_negative(self):
        """Test that DG quotients need non-positive models."""
        line = quotient(poly_ring("x"))
        model = self.service.build_nonneg_trivial_extension(
            line, PresentedModule.free(line.ring, [0]), -1)
        with self.assertRaises(PreconditionError):
            self.service.dg_quotient(model, line.ring.gen(0))

    def test_canonical_module(self):
        """Test ω of the node."""
        omega = self.service.canonical_module(self.node)
        self.assertEqual(omega.rank, 1)
        self.assertEqual(self.homalg.module_krull_dim(omega), 1)
        self.assertTrue(self.service.groebner.ideals_equal(self.homalg.annihilator(omega),
                                                           ideal(self.ring, "x*y")))
        with self.assertRaises(DegenerateInputError):
            self.service.canonical_module(QuotientRing(self.ring, Ideal(self.ring, (self.ring.one(),))))

    def test_dg_modules(self):
        """Test DG-modules over a model."""
        model = self.service.build_koszul_dg(self.node, ())
        module = self.service.module_over(model, cyclic(self.ring, "x"), -1, "N")
        self.assertEqual(self.service.cohomology_degrees(module), [-1])
        with self.assertRaises(DegenerateInputError):
            self.service.module_over(model, cyclic(self.ring, "1"))
        koszul = self.service.build_koszul_dg(self.node, [self.x])
        with self.assertRaises(StructuralError):
            self.service.build_dg_module(koszul, Complex.concentrated(cyclic(self.ring, "y"), 0))


if __name__ == '__main__':
    unittest.main()
