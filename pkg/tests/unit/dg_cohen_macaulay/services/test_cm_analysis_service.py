"""
Unit tests for the CohenMacaulayService class.
"""
import unittest
from unittest.mock import patch

from src.dg_cohen_macaulay.errors import (
    DegenerateInputError,
    IncompleteSearchError,
    KernelConsistencyError,
    NotInSpectrumError,
    PreconditionError,
    StructuralError,
    UnsupportedInputError,
)
from src.dg_cohen_macaulay.models.algebra import Ideal, QuotientRing
from src.dg_cohen_macaulay.models.homalg import PresentedModule
from src.dg_cohen_macaulay.models.invariants import NEG_INF
from src.dg_cohen_macaulay.models.verdicts import Verdict
from src.dg_cohen_macaulay.services.cm_analysis_service import ASSERTED_NOTE
from tests.unit.dg_cohen_macaulay.helpers import (
    cyclic,
    ideal,
    load_model,
    poly_ring,
    quotient,
    shared_cm_service,
)


class TestLocalVerdicts(unittest.TestCase):
    """Test cases for local, module and non-negative verdicts."""

    @classmethod
    def setUpClass(cls):
        """Set up the shared service."""
        cls.service = shared_cm_service()

    def test_reg_not_par_is_cm(self):
        """Test the certificate of k[x, y]/(xy) ⋉ (R/(x))[1]."""
        verdict = self.service.check_local_cm(load_model("reg-not-par"))
        self.assertIs(verdict.verdict, Verdict.CM)
        self.assertEqual(verdict.route, "amplitude+sequential_depth")
        self.assertEqual(verdict.certificate, {"amp": 1, "rgamma_amp": 1, "seq_depth": 1,
                                               "dim_h0": 1, "depth": 0, "inf": -1})
        self.assertEqual(verdict.notes, ())

    def test_maximal_ideal_extension_is_not_cm(self):
        """Test k[x, y] ⋉ (x, y)[2]."""
        verdict = self.service.check_local_cm(load_model("non-cm-max-ideal"))
        self.assertIs(verdict.verdict, Verdict.NOT_CM)
        self.assertEqual(verdict.certificate["rgamma_amp"], 3)
        self.assertEqual(verdict.certificate["seq_depth"], 1)

    def test_families_that_are_cm(self):
        """Test Gorenstein, zero-dimensional and derived-fiber models."""
        for name in ("gorenstein-line", "gorenstein-node", "gorenstein-double-line",
                     "zd-koszul", "derived-fiber", "localiz-counterexample"):
            with self.subTest(name=name):
                self.assertTrue(self.service.check_local_cm(load_model(name)).is_cm)

    def test_asserted_structure_is_noted(self):
        """Test the note on models built from explicit complexes."""
        verdict = self.service.check_local_cm(load_model("explicit-node-koszul"))
        self.assertTrue(verdict.is_cm)
        self.assertEqual(verdict.notes, (ASSERTED_NOTE,))

    def test_routes_must_agree(self):
        """Test that a disagreement between the two routes is reported."""
        model = load_model("reg-not-par")
        with patch.object(self.service.invariants, "rgamma_amp", return_value=5):
            with self.assertRaises(KernelConsistencyError):
                self.service.check_local_cm(model)

    def test_orientation_preconditions(self):
        """Test that each check refuses the other orientation."""
        with self.assertRaises(PreconditionError):
            self.service.check_local_cm(load_model("nonneg-free-line"))
        with self.assertRaises(PreconditionError):
            self.service.check_cm_nonneg(load_model("reg-not-par"))

    def test_non_negative_counterexample(self):
        """Test k[x] ⋉ k[-1], which is not Cohen-Macaulay."""
        verdict = self.service.check_cm_nonneg(load_model("nonneg-counterexample"))
        self.assertIs(verdict.verdict, Verdict.NOT_CM)
        self.assertEqual(verdict.certificate["conditions"],
                         {"top_dimension": False, "rgamma_amplitude": False})
        self.assertEqual(verdict.certificate["rgamma_profile"], [1])
        self.assertEqual(verdict.certificate["rgamma_amp"], 0)

    def test_non_negative_cm(self):
        """Test non-negative models that are Cohen-Macaulay."""
        line = self.service.check_cm_nonneg(load_model("nonneg-free-line"))
        self.assertTrue(line.is_cm)
        self.assertEqual(line.certificate["rgamma_profile"], [1, 2])
        artinian = self.service.check_cm_nonneg(load_model("artinian-nonneg"))
        self.assertTrue(artinian.is_cm)
        self.assertEqual(artinian.certificate["rgamma_profile"], [0, 2])

    def test_cm_module(self):
        """Test module verdicts over reg-not-par."""
        construct = self.service.construct
        model = load_model("reg-not-par")
        ring = model.ring
        h0 = construct.module_over(model, PresentedModule.free(ring, [0]), 0, "H0")
        verdict = self.service.check_cm_module(model, h0)
        self.assertIs(verdict.verdict, Verdict.NOT_CM)
        self.assertEqual(verdict.certificate["amp_module"], 0)
        self.assertEqual(verdict.certificate["amp_ring"], 1)
        with self.assertRaises(PreconditionError):
            self.service.check_mcm_module(model, h0)

    def test_trivial_extension_criterion(self):
        """Test the trivial-extension criterion against the direct verdict."""
        ring = poly_ring("x", "y")
        plane = QuotientRing(ring)
        free = self.service.check_triv_ext_cm(plane, PresentedModule.free(ring, [0]), 2)
        self.assertTrue(free.hypotheses_hold)
        self.assertIs(free.predicted, Verdict.CM)
        self.assertTrue(free.agrees)

        maximal = self.service.homalg.ideal_module(ideal(ring, "x", "y"), Ideal(ring, ()))
        report = self.service.check_triv_ext_cm(plane, maximal, 2)
        self.assertTrue(report.hypotheses_hold)
        self.assertIs(report.predicted, Verdict.NOT_CM)
        self.assertTrue(report.agrees)

        partial = self.service.check_triv_ext_cm(plane, cyclic(ring, "x"), 1)
        self.assertFalse(partial.hypotheses["lc_dim_equals_inf_plus_dim"])
        self.assertIsNone(partial.predicted)
        self.assertEqual(partial.quantities["dim_module"], 1)


class TestDualizing(unittest.TestCase):
    """Test cases for the dualizing model and its structure report."""

    @classmethod
    def setUpClass(cls):
        """Set up the shared service."""
        cls.service = shared_cm_service()

    def test_normalized_dualizing_model(self):
        """Test the dualizing model of a non-Cohen-Macaulay extension."""
        dualizing = self.service.dualizing_dg(load_model("non-cm-max-ideal"))
        self.assertEqual(dualizing.shift, 2)
        self.assertTrue(dualizing.normalized)
        self.assertEqual(dualizing.degrees, [-2, 0, 1])
        self.assertEqual(dualizing.amp, 3)

    def test_structure_report_of_cm_model(self):
        """Test the structural identities and the maximal verdict."""
        report = self.service.dualizing_structure_report(load_model("reg-not-par"))
        self.assertTrue(report.all_passed)
        self.assertEqual(report.dualizing.inf, -1)
        self.assertEqual(report.dualizing.amp, 1)
        self.assertIsNotNone(report.mcm)
        self.assertTrue(report.mcm.is_cm)

    def test_structure_report_of_non_cm_model(self):
        """Test that structural checks pass and no maximal verdict is given."""
        report = self.service.dualizing_structure_report(load_model("non-cm-max-ideal"))
        self.assertTrue(report.all_passed)
        self.assertIsNone(report.mcm)
        self.assertEqual(report.check("structure_1").detail["dim_h0"], 2)


class TestRegularSequences(unittest.TestCase):
    """Test cases for regular elements and the randomized search."""

    @classmethod
    def setUpClass(cls):
        """Set up the shared service."""
        cls.service = shared_cm_service()

    def test_regular_elements(self):
        """Test that y is regular on reg-not-par and x is not."""
        model = load_model("reg-not-par")
        x, y = model.ring.gens()
        self.assertTrue(self.service.is_regular_element(model, y))
        self.assertFalse(self.service.is_regular_element(model, x))
        self.assertTrue(self.service.is_regular_element(model, x + y))

    def test_regular_but_not_parameter(self):
        """Test that quotienting by y keeps dim H⁰ at one."""
        model = load_model("reg-not-par")
        quotient_model = self.service.construct.dg_quotient(model, model.ring.gen("y"))
        self.assertEqual(self.service.construct.dim_h0(quotient_model), 1)

    def test_regular_element_rejects_bad_input(self):
        """Test that constants and inhomogeneous elements are rejected."""
        model = load_model("reg-not-par")
        with self.assertRaises(UnsupportedInputError):
            self.service.is_regular_element(model, model.ring.one())
        with self.assertRaises(UnsupportedInputError):
            self.service.is_regular_element(model, model.ring.parse("x + y^2"))

    def test_find_system_of_parameters(self):
        """Test the search on reg-not-par with a system of parameters required."""
        model = load_model("reg-not-par")
        certificate = self.service.find_regular_sequence(model, want_sop=True, seed=7)
        self.assertTrue(certificate.complete)
        self.assertEqual(certificate.target_length, 1)
        self.assertTrue(certificate.is_system_of_parameters)
        step = certificate.steps[0]
        self.assertEqual((step.dim_before, step.dim_after), (1, 0))
        self.assertEqual(step.amp_after, step.amp_before)
        chain = self.service.quotient_chain(model, certificate)
        self.assertEqual(len(chain), 1)
        self.assertTrue(self.service.check_local_cm(chain[0]).is_cm)

    def test_search_is_deterministic(self):
        """Test that a seed fixes the sequence."""
        model = load_model("gorenstein-node")
        first = self.service.find_regular_sequence(model, seed=11)
        second = self.service.find_regular_sequence(model, seed=11)
        self.assertEqual(first.sequence, second.sequence)

    def test_search_budget_exhausted(self):
        """Test the partial certificate when no candidate may be tried."""
        model = load_model("gorenstein-line")
        with self.assertRaises(IncompleteSearchError) as context:
            self.service.find_regular_sequence(model, max_tries=0)
        certificate = context.exception.certificate
        self.assertEqual(certificate.steps, ())
        self.assertFalse(certificate.complete)

    def test_zero_dimensional_needs_no_elements(self):
        """Test that seq.depth zero gives an empty complete certificate."""
        certificate = self.service.find_regular_sequence(load_model("zd-koszul"), want_sop=True)
        self.assertTrue(certificate.complete)
        self.assertTrue(certificate.is_system_of_parameters)


class TestLocalization(unittest.TestCase):
    """Test cases for verdicts at primes and global verdicts."""

    @classmethod
    def setUpClass(cls):
        """Set up the shared service."""
        cls.service = shared_cm_service()

    def test_localization_counterexample(self):
        """Test that Cohen-Macaulayness at the origin does not pass to (x, y)."""
        model = load_model("localiz-counterexample")
        ring = model.ring
        self.assertTrue(self.service.check_local_cm(model).is_cm)
        at_xy = self.service.check_cm_at_prime(model, ideal(ring, "x", "y"))
        self.assertIs(at_xy.verdict, Verdict.NOT_CM)
        at_origin = self.service.check_cm_at_prime(model, ring.irrelevant_ideal())
        self.assertIs(at_origin.verdict, Verdict.CM)
        self.assertIs(self.service.check_cm_global(model).verdict, Verdict.NOT_CM)

    def test_global_cm(self):
        """Test global verdicts of Cohen-Macaulay models."""
        for name in ("reg-not-par", "gorenstein-node", "zd-koszul"):
            with self.subTest(name=name):
                verdict = self.service.check_cm_global(load_model(name))
                self.assertIs(verdict.verdict, Verdict.CM)
                self.assertEqual(verdict.certificate["failed"], [])

    def test_prime_outside_spectrum(self):
        """Test primes that do not contain the H⁰ ideal."""
        model = load_model("reg-not-par")
        with self.assertRaises(NotInSpectrumError):
            self.service.check_cm_at_prime(model, ideal(model.ring, "x + y"))
        with self.assertRaises(StructuralError):
            self.service.check_cm_at_prime(model, Ideal(model.ring, (model.ring.one(),)))

    def test_global_skips_primes_outside_spectrum(self):
        """Test that user primes outside Spec H⁰ are noted and skipped."""
        model = load_model("reg-not-par")
        verdict = self.service.check_cm_global(model, [ideal(model.ring, "x + y")])
        self.assertIs(verdict.verdict, Verdict.CM)
        self.assertTrue(any("skipped" in note for note in verdict.notes))

    def test_trusted_primality(self):
        """Test the note for primes not generated by variables."""
        model = load_model("gorenstein-line")
        verdict = self.service.check_cm_at_prime(model, ideal(model.ring, "x"))
        self.assertNotIn("primality trusted", verdict.notes)
        ring = poly_ring("x", "y")
        plane = self.service.construct.build_koszul_dg(QuotientRing(ring), ())
        verdict = self.service.check_cm_at_prime(plane, ideal(ring, "x + y"))
        self.assertTrue(verdict.is_cm)
        self.assertIn("primality trusted", verdict.notes)

    def test_supp_contains(self):
        """Test support membership."""
        ring = poly_ring("x", "y")
        module = cyclic(ring, "x")
        self.assertTrue(self.service.supp_contains(module, ideal(ring, "x")))
        self.assertFalse(self.service.supp_contains(module, ideal(ring, "y")))
        with self.assertRaises(StructuralError):
            self.service.supp_contains(module, ideal(ring, "1"))


class TestTheoremSuite(unittest.TestCase):
    """Test cases for the theorem suite."""

    @classmethod
    def setUpClass(cls):
        """Set up the shared service."""
        cls.service = shared_cm_service()

    def test_suite_passes_on_fixtures(self):
        """Test that every identity holds on the bundled models."""
        for name in ("reg-not-par", "non-cm-max-ideal", "zd-koszul", "derived-fiber",
                     "gorenstein-node", "localiz-counterexample"):
            with self.subTest(name=name):
                suite = self.service.verify_theorem_suite(load_model(name))
                self.assertEqual([c.name for c in suite.failures], [])

    def test_suite_with_regular_sequence(self):
        """Test the optional regular-sequence check."""
        suite = self.service.verify_theorem_suite(load_model("reg-not-par"), include_regseq=True,
                                                  seed=7)
        self.assertTrue(suite.check("regular_sequence").passed)

    def test_suite_applicability(self):
        """Test checks that only apply to some models."""
        zd = self.service.verify_theorem_suite(load_model("zd-koszul"))
        self.assertTrue(zd.check("zero_dimensional").passed)
        not_cm = self.service.verify_theorem_suite(load_model("non-cm-max-ideal"))
        self.assertIsNone(not_cm.check("dim_of_inf_cm").passed)
        self.assertIsNone(not_cm.check("zero_dimensional").passed)

    def test_suite_on_non_negative_model(self):
        """Test that non-negative models only get the dimension bound."""
        suite = self.service.verify_theorem_suite(load_model("nonneg-counterexample"))
        self.assertEqual([c.name for c in suite.checks], ["dimension_bounds", "nonneg_conditions"])
        self.assertTrue(suite.all_passed)

    def test_degenerate_model(self):
        """Test that models without cohomology are refused."""
        ring = poly_ring("x")
        zero_base = quotient(ring, "1")
        model = self.service.construct.build_koszul_dg(zero_base, ())
        with self.assertRaises(DegenerateInputError):
            self.service.check_local_cm(model)
        self.assertEqual(self.service.invariants.depth(model), NEG_INF)


if __name__ == '__main__':
    unittest.main()
