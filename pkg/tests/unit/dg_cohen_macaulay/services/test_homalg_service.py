"""
Unit tests for the HomologicalAlgebraService class.
"""
import unittest

from src.dg_cohen_macaulay.errors import StructuralError, UnsupportedInputError
from src.dg_cohen_macaulay.models.algebra import Ideal
from src.dg_cohen_macaulay.models.homalg import Complex, PresentedModule
from src.dg_cohen_macaulay.services.homalg_service import (
    HomologicalAlgebraService,
    monomials_of_degree,
)
from tests.unit.dg_cohen_macaulay.helpers import cyclic, ideal, poly_ring


class TestModules(unittest.TestCase):
    """Test cases for module-level operations."""

    @classmethod
    def setUpClass(cls):
        """Set up one service for the class."""
        cls.service = HomologicalAlgebraService()

    def setUp(self):
        """Set up test fixtures."""
        self.ring = poly_ring("x", "y")
        self.x, self.y = self.ring.gens()

    def test_monomials_of_degree(self):
        """Test enumeration of monomials."""
        self.assertEqual(sorted(monomials_of_degree(2, 2)), [(0, 2), (1, 1), (2, 0)])
        self.assertEqual(list(monomials_of_degree(2, -1)), [])

    def test_is_zero_module(self):
        """Test recognition of zero modules."""
        self.assertTrue(self.service.is_zero_module(PresentedModule.zero(self.ring)))
        self.assertTrue(self.service.is_zero_module(cyclic(self.ring, "1")))
        killed = cyclic(self.ring, "x").over_quotient(Ideal(self.ring, (self.ring.one(),)))
        self.assertTrue(self.service.is_zero_module(killed))
        self.assertFalse(self.service.is_zero_module(cyclic(self.ring, "x", "y")))

    def test_prune_removes_unit_relations(self):
        """Test that generators killed by units are eliminated."""
        module = PresentedModule(self.ring, (0, 1), ((self.y, self.ring.one()), (self.x, self.ring.zero())))
        pruned = self.service.prune(module)
        self.assertEqual(pruned.rank, 1)
        self.assertEqual(pruned.degrees, (0,))
        self.assertTrue(self.service.groebner.ideals_equal(self.service.annihilator(pruned),
                                                           ideal(self.ring, "x")))
        self.assertTrue(self.service.groebner.ideals_equal(self.service.annihilator(module),
                                                           ideal(self.ring, "x")))

    def test_annihilator(self):
        """Test annihilators of cyclic modules and direct sums."""
        total = cyclic(self.ring, "x").direct_sum(cyclic(self.ring, "y"))
        ann = self.service.annihilator(total)
        self.assertTrue(self.service.groebner.ideals_equal(ann, ideal(self.ring, "x*y")))
        unit = self.service.annihilator(PresentedModule.zero(self.ring))
        self.assertTrue(self.service.groebner.gb_compute(unit).is_unit)

    def test_intersect_ideals(self):
        """Test ideal intersection."""
        meet = self.service.intersect_ideals(ideal(self.ring, "x"), ideal(self.ring, "y"))
        self.assertTrue(self.service.groebner.ideals_equal(meet, ideal(self.ring, "x*y")))
        meet = self.service.intersect_ideals(ideal(self.ring, "x^2", "y"), ideal(self.ring, "x"))
        self.assertTrue(self.service.groebner.ideals_equal(meet, ideal(self.ring, "x^2", "x*y")))

    def test_krull_dimension(self):
        """Test Krull dimensions of modules."""
        self.assertEqual(self.service.module_krull_dim(cyclic(self.ring, "x*y")), 1)
        self.assertEqual(self.service.module_krull_dim(cyclic(self.ring, "x", "y")), 0)
        self.assertEqual(self.service.module_krull_dim(PresentedModule.free(self.ring, [0])), 2)
        self.assertEqual(self.service.module_krull_dim(PresentedModule.zero(self.ring)), -1)

    def test_hilbert_function(self):
        """Test graded dimensions."""
        node = cyclic(self.ring, "x*y")
        self.assertEqual(self.service.hilbert_function(node, 0), 1)
        self.assertEqual(self.service.hilbert_function(node, 3), 2)
        free = PresentedModule.free(self.ring, [1])
        self.assertEqual(self.service.hilbert_function(free, 0), 0)
        self.assertEqual(self.service.hilbert_function(free, 4), 4)

    def test_ideal_module(self):
        """Test the ideal (x) of k[x, y]/(xy) as a module."""
        module = self.service.ideal_module(ideal(self.ring, "x"), ideal(self.ring, "x*y"))
        self.assertEqual(module.degrees, (1,))
        self.assertTrue(self.service.are_isomorphic(module, cyclic(self.ring, "y", degree=1)))

    def test_are_isomorphic(self):
        """Test the isomorphism decision."""
        self.assertTrue(self.service.are_isomorphic(cyclic(self.ring, "x"), cyclic(self.ring, "2*x")))
        self.assertFalse(self.service.are_isomorphic(cyclic(self.ring, "x"), cyclic(self.ring, "y")))
        self.assertFalse(self.service.are_isomorphic(cyclic(self.ring, "x"),
                                                     cyclic(self.ring, "x", degree=1)))
        self.assertTrue(self.service.are_isomorphic(cyclic(self.ring, "1"), PresentedModule.zero(self.ring)))


class TestMapsAndComplexes(unittest.TestCase):
    """Test cases for maps, complexes, cohomology and resolutions."""

    @classmethod
    def setUpClass(cls):
        """Set up one service for the class."""
        cls.service = HomologicalAlgebraService(strict=True)

    def setUp(self):
        """Set up test fixtures."""
        self.ring = poly_ring("x", "y")
        self.x, self.y = self.ring.gens()
        self.residue = cyclic(self.ring, "x", "y")

    def _free(self, *degrees):
        return PresentedModule.free(self.ring, list(degrees))

    def test_make_map_checks_degree(self):
        """Test that maps must preserve degrees."""
        with self.assertRaises(StructuralError):
            self.service.make_map(self._free(0), self._free(0), ((self.x,),))
        module_map = self.service.make_map(self._free(1), self._free(0), ((self.x,),))
        self.assertEqual(module_map.source.degrees, (1,))

    def test_make_map_checks_relations(self):
        """Test that relations of the source must map into relations of the target."""
        with self.assertRaises(StructuralError):
            self.service.make_map(cyclic(self.ring, "x"), self._free(0), ((self.ring.one(),),))
        self.service.make_map(self._free(0), cyclic(self.ring, "x"), ((self.ring.one(),),))

    def test_make_map_inhomogeneous(self):
        """Test that inhomogeneous columns are rejected."""
        with self.assertRaises(UnsupportedInputError):
            self.service.make_map(self._free(1), self._free(0), ((self.ring.parse("x + x^2"),),))

    def test_syzygies(self):
        """Test the kernel of (x, y): P(-1)² → P."""
        module_map = self.service.make_map(self._free(1, 1), self._free(0), ((self.x,), (self.y,)))
        syzygies = self.service.syzygies(module_map)
        self.assertEqual(len(syzygies), 1)
        a, b = syzygies[0]
        self.assertTrue((self.x * a + self.y * b).is_zero())
        self.assertEqual(a.total_degree(), 1)
        with self.assertRaises(StructuralError):
            self.service.syzygies(self.service.make_map(self.residue, self.residue,
                                                        ((self.ring.one(),),)))

    def test_make_complex_rejects_nonzero_square(self):
        """Test that d∘d ≠ 0 is detected."""
        terms = {0: self._free(0), 1: self._free(-1), 2: self._free(-2)}
        differentials = {0: ((self.x,),), 1: ((self.x,),)}
        with self.assertRaises(StructuralError):
            self.service.make_complex(terms, differentials)

    def test_make_complex_rejects_out_of_range_differential(self):
        """Test that differentials must sit between terms."""
        with self.assertRaises(StructuralError):
            self.service.make_complex({0: self._free(0)}, {0: ()})
        with self.assertRaises(StructuralError):
            self.service.make_complex({}, {})

    def test_make_complex_fills_gaps(self):
        """Test that missing degrees become zero terms."""
        complex_ = self.service.make_complex({-2: self.residue, 0: self._free(0)}, {})
        self.assertEqual(complex_.term(-1).rank, 0)
        self.assertEqual(self.service.cohomology_degrees(complex_), [-2, 0])

    def test_shift(self):
        """Test re-indexing and the sign of the differential."""
        complex_ = self.service.make_complex({-1: self._free(1), 0: self._free(0)},
                                             {-1: ((self.x,),)})
        shifted = self.service.shift(complex_, 1)
        self.assertEqual((shifted.lo, shifted.hi), (-2, -1))
        self.assertEqual(shifted.differential(-2)[0][0], -self.x)
        self.assertEqual(self.service.shift(complex_, 2).differential(-3)[0][0], self.x)

    def test_cone_of_multiplication_is_koszul(self):
        """Test that the cone of x on P computes P/(x)."""
        base = Complex.concentrated(self._free(0), 0)
        cone = self.service.cone(self.service.multiplication_map(base, self.x))
        self.assertEqual((cone.lo, cone.hi), (-1, 0))
        self.assertEqual(self.service.cohomology_degrees(cone), [0])
        h0 = self.service.cohomology_at(cone, 0)
        self.assertTrue(self.service.are_isomorphic(h0, cyclic(self.ring, "x")))

    def test_multiplication_map_inhomogeneous(self):
        """Test that multiplication needs a homogeneous element."""
        base = Complex.concentrated(self._free(0), 0)
        with self.assertRaises(UnsupportedInputError):
            self.service.multiplication_map(base, self.ring.parse("x + y^2"))

    def test_cohomology_of_koszul_on_zero_divisor(self):
        """Test H⁻¹ of the Koszul complex of x over k[x, y]/(xy)."""
        node = cyclic(self.ring, "x*y")
        cone = self.service.cone(self.service.multiplication_map(Complex.concentrated(node, 0), self.x))
        h_minus = self.service.cohomology_at(cone, -1)
        # generated by y·e with e in degree 1
        self.assertEqual(h_minus.degrees, (2,))
        self.assertTrue(self.service.are_isomorphic(h_minus, cyclic(self.ring, "x", degree=2)))
        self.assertEqual(self.service.cohomology_at(cone, 7).rank, 0)

    def test_euler_characteristic(self):
        """Test the Euler characteristic in one internal degree."""
        base = Complex.concentrated(self._free(0), 0)
        cone = self.service.cone(self.service.multiplication_map(base, self.x))
        # H⁰ = k[y], one monomial per degree
        self.assertEqual(self.service.euler_characteristic(cone, 3), 1)

    def test_free_resolution_of_residue_field(self):
        """Test the Koszul resolution of k over k[x, y]."""
        resolution = self.service.free_resolution(self.residue)
        self.assertEqual((resolution.lo, resolution.hi), (-2, 0))
        self.assertEqual([t.rank for t in resolution.terms], [1, 2, 1])
        self.assertEqual(resolution.term(-1).degrees, (1, 1))
        self.assertEqual(resolution.term(-2).degrees, (2,))
        self.assertEqual(self.service.cohomology_degrees(resolution), [0])

    def test_free_resolution_of_free_module(self):
        """Test that free modules resolve in one step."""
        resolution = self.service.free_resolution(self._free(0, 3))
        self.assertEqual((resolution.lo, resolution.hi), (0, 0))
        zero = self.service.free_resolution(cyclic(self.ring, "1"))
        self.assertEqual(zero.term(0).rank, 0)

    def test_resolve_complex_is_quasi_isomorphic(self):
        """Test the free replacement of a two-term complex."""
        complex_ = self.service.make_complex({-2: self.residue, 0: cyclic(self.ring, "x*y")}, {})
        free = self.service.resolve_complex(complex_)
        self.assertTrue(free.is_free)
        self.assertEqual(self.service.cohomology_degrees(free), [-2, 0])
        self.assertIsNotNone(free.comparison)
        self.assertIs(self.service.resolve_complex(complex_), free)

    def test_dual_into_base_requires_free(self):
        """Test that duals are taken of free complexes only."""
        with self.assertRaises(StructuralError):
            self.service.dual_into_base(Complex.concentrated(self.residue, 0))

    def test_ext_profile(self):
        """Test Ext modules into P."""
        self.assertEqual(sorted(self.service.ext_profile(Complex.concentrated(self.residue, 0))), [2])
        node = cyclic(self.ring, "x*y")
        self.assertEqual(sorted(self.service.ext_profile(Complex.concentrated(node, 0))), [1])
        free = self._free(0)
        self.assertEqual(sorted(self.service.ext_profile(Complex.concentrated(free, 0))), [0])
        # shifting the complex shifts Ext
        self.assertEqual(sorted(self.service.ext_profile(Complex.concentrated(free, -1))), [1])


if __name__ == '__main__':
    unittest.main()
