"""
Cohen-Macaulay verdicts for DG-ring models: local, module-level, maximal, at a prime,
global and non-negative, together with the dualizing model and regular-sequence search.
"""
import logging
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.dg_cohen_macaulay.errors import (
    DegenerateInputError,
    IncompleteSearchError,
    KernelConsistencyError,
    NotInSpectrumError,
    PreconditionError,
    StructuralError,
    UnsupportedInputError,
)
from src.dg_cohen_macaulay.models.algebra import Ideal, Polynomial, QuotientRing
from src.dg_cohen_macaulay.models.dg_model import (
    CohomologyEntry,
    DGModuleModel,
    DGRingModel,
    Orientation,
)
from src.dg_cohen_macaulay.models.homalg import PresentedModule
from src.dg_cohen_macaulay.models.invariants import NEG_INF
from src.dg_cohen_macaulay.models.verdicts import (
    CMVerdict,
    DualizingModel,
    RegSeqCertificate,
    RegSeqStep,
    StructureReport,
    TheoremCheck,
    TheoremSuiteReport,
    TrivialExtensionReport,
    Verdict,
)
from src.dg_cohen_macaulay.services.groebner_service import polynomial_vector
from src.dg_cohen_macaulay.services.invariant_service import InvariantService

logger = logging.getLogger(__name__)

ASSERTED_NOTE = "DG structure asserted"

DEFAULT_SEED = 1
DEFAULT_MAX_TRIES = 64


def _span(degrees: Sequence[int]):
    return max(degrees) - min(degrees) if degrees else NEG_INF


class CohenMacaulayService:
    """Decides the Cohen-Macaulay property of models through several equivalent routes."""

    def __init__(self, invariants: Optional[InvariantService] = None):
        """
        Initialize the service.

        Args:
            invariants: Invariant service; a fresh one by default.
        """
        self.invariants = invariants or InvariantService()
        self.construct = self.invariants.construct
        self.homalg = self.invariants.homalg
        self.groebner = self.invariants.groebner

    # ------------------------------------------------------------------ helpers

    @staticmethod
    def _require_non_positive(model: DGRingModel, hint: str) -> None:
        if model.orientation is not Orientation.NON_POSITIVE:
            raise PreconditionError(f"Model is non-negative; use {hint}")

    @staticmethod
    def _notes(model: DGRingModel) -> Tuple[str, ...]:
        return (ASSERTED_NOTE,) if model.is_asserted else ()

    def _require_cohomology(self, subject) -> List[CohomologyEntry]:
        entries = self.invariants.cohomology_entries(subject)
        if not entries:
            raise DegenerateInputError("The model has no cohomology")
        return entries

    # ------------------------------------------------------------------ local verdicts

    def check_local_cm(self, model: DGRingModel) -> CMVerdict:
        """
        Local Cohen-Macaulay verdict, evaluated through amp(RΓ) = amp and through
        seq.depth = dim H⁰.

        Raises:
            PreconditionError: For non-negative models.
            KernelConsistencyError: If the two routes disagree.
        """
        self._require_non_positive(model, "check_cm_nonneg")
        self._require_cohomology(model)
        bundle = self.invariants.bundle(model)
        rgamma_amp = self.invariants.rgamma_amp(model)
        by_amplitude = rgamma_amp == bundle.amp
        by_depth = bundle.seq_depth == bundle.dim_h0
        certificate = {
            "amp": bundle.amp,
            "rgamma_amp": rgamma_amp,
            "seq_depth": bundle.seq_depth,
            "dim_h0": bundle.dim_h0,
            "depth": bundle.depth,
            "inf": bundle.inf,
        }
        if by_amplitude != by_depth:
            raise KernelConsistencyError(
                f"Amplitude route says {by_amplitude} but sequential-depth route says {by_depth} "
                f"for {model.describe()}"
            )
        verdict = CMVerdict(Verdict.from_bool(by_amplitude), "amplitude+sequential_depth",
                            certificate, self._notes(model))
        logger.info("Local verdict for %s: %s", model.describe(), verdict.verdict.value)
        return verdict

    def check_cm_module(self, model: DGRingModel, module: DGModuleModel) -> CMVerdict:
        """
        amp(M) = amp(A) = amp(RΓ(M)).

        Raises:
            DegenerateInputError: If M has no cohomology.
        """
        self._require_non_positive(model, "check_cm_nonneg")
        self._require_cohomology(module)
        _, _, amp_module = self.invariants.amplitude(module)
        _, _, amp_ring = self.invariants.amplitude(model)
        rgamma_amp = self.invariants.rgamma_amp(module)
        certificate = {"amp_module": amp_module, "amp_ring": amp_ring, "rgamma_amp": rgamma_amp}
        return CMVerdict(Verdict.from_bool(amp_module == amp_ring == rgamma_amp), "amplitudes",
                         certificate, self._notes(model))

    def check_mcm_module(self, model: DGRingModel, module: DGModuleModel) -> CMVerdict:
        """
        lc.dim(M) = sup(M) + dim H⁰(A) for a Cohen-Macaulay DG-module M.

        Raises:
            PreconditionError: If M is not Cohen-Macaulay.
        """
        if not self.check_cm_module(model, module).is_cm:
            raise PreconditionError(f"{module.label} is not a Cohen-Macaulay DG-module")
        lc_dim = self.invariants.lc_dim(module)
        sup, _, _ = self.invariants.amplitude(module)
        d = self.construct.dim_h0(model)
        certificate = {"lc_dim": lc_dim, "sup": sup, "dim_h0": d}
        return CMVerdict(Verdict.from_bool(lc_dim == sup + d), "maximal", certificate,
                         self._notes(model))

    # ------------------------------------------------------------------ dualizing model

    def dualizing_dg(self, model: DGRingModel) -> DualizingModel:
        """
        Hom(F, P) for a free replacement F of A, shifted so that inf = -dim H⁰(A).

        Raises:
            DegenerateInputError: If A has no cohomology.
        """
        def compute():
            self._require_cohomology(model)
            d = self.construct.dim_h0(model)
            ext = self.homalg.ext_profile(model.complex)
            shift = min(ext) + d
            complex_ = self.homalg.shift(self.homalg.dual_complex(model.complex), shift)
            table = tuple(CohomologyEntry(j - shift, module, self.homalg.module_krull_dim(module))
                          for j, module in sorted(ext.items()))
            dualizing = DualizingModel(complex_, shift, table, d, model.ring.nvars)
            if not dualizing.normalized:
                logger.info("Dualizing model needs shift %d instead of %d", shift, model.ring.nvars)
            return dualizing
        return model.memoized("dualizing", compute)

    def dualizing_structure_report(self, model: DGRingModel) -> StructureReport:
        """Per-degree dimensions of the dualizing model and the structural identities."""
        dualizing = self.dualizing_dg(model)
        d = dualizing.dim_h0
        _, _, amp = self.invariants.amplitude(model)
        is_cm = self.check_local_cm(model).is_cm
        first = dualizing.dim_at(dualizing.inf)
        bounds = {i: dualizing.dim_at(-i + amp) for i in range(d + 1)}
        top = dualizing.dim_at(dualizing.sup)
        lc_dim = max(entry.krull_dim + entry.degree for entry in dualizing.table)
        checks = (
            TheoremCheck("structure_1", first == d, {"dim_inf": first, "dim_h0": d}),
            TheoremCheck("structure_2", all(dim <= i for i, dim in bounds.items()),
                         {"dims": bounds, "amp": amp}),
            TheoremCheck("structure_3", (top == d) == is_cm == (lc_dim == dualizing.sup + d),
                         {"dim_sup": top, "lc_dim": lc_dim, "sup": dualizing.sup, "cm": is_cm}),
            TheoremCheck("normalized", dualizing.normalized,
                         {"shift": dualizing.shift, "nvars": dualizing.nvars}),
        )
        mcm = None
        if is_cm:
            module = DGModuleModel(model, dualizing.complex, "R")
            mcm = self.check_mcm_module(model, module)
        return StructureReport(dualizing, checks, mcm)

    # ------------------------------------------------------------------ regular sequences

    def is_regular_element(self, subject, element: Polynomial) -> bool:
        """
        True iff multiplication by the element is injective on H^{inf}.

        Raises:
            UnsupportedInputError: If the element is inhomogeneous or a constant.
        """
        if element.is_zero() or not element.is_homogeneous() or element.total_degree() < 1:
            raise UnsupportedInputError(f"{element} is not a homogeneous element of positive degree")
        entries = self.invariants.cohomology_entries(subject)
        if not entries:
            return True
        bottom = min(entries, key=lambda entry: entry.degree).module
        ring = bottom.ring
        shifts = [deg + element.total_degree() for deg in bottom.degrees]
        columns = [polynomial_vector(element, j) for j in range(bottom.rank)]
        relations = self.homalg.relation_vectors(bottom)
        kernel = self.homalg.kernel_vectors(ring, columns, shifts, bottom.degrees, relations)
        return not self.homalg.minimal_generators(kernel, shifts, relations, ring.characteristic)

    def find_regular_sequence(self, model: DGRingModel, want_sop: bool = False,
                              seed: int = DEFAULT_SEED,
                              max_tries: int = DEFAULT_MAX_TRIES) -> RegSeqCertificate:
        """
        Greedy search for a maximal regular sequence of random linear forms.

        Candidates are drawn from a seeded generator; the first candidate that is regular
        (and, with ``want_sop``, drops dim H⁰ by one) is accepted and applied by DG quotient.

        Raises:
            IncompleteSearchError: If no candidate is found within ``max_tries`` before the
                sequence reaches length seq.depth.
        """
        self._require_non_positive(model, "check_cm_nonneg")
        self._require_cohomology(model)
        target = self.invariants.seq_depth(model)
        ring = model.ring
        rng = np.random.default_rng(seed)
        steps: List[RegSeqStep] = []
        tried = 0
        current = model

        def certificate() -> RegSeqCertificate:
            return RegSeqCertificate(tuple(steps), target, want_sop, seed, tried)

        while len(steps) < target:
            dim_before = self.construct.dim_h0(current)
            sup_before, inf_before, amp_before = self.invariants.amplitude(current)
            accepted = False
            for _ in range(max_tries):
                coefficients = rng.integers(0, ring.characteristic, size=ring.nvars)
                tried += 1
                if not coefficients.any():
                    continue
                element = ring.zero()
                for coeff, gen in zip(coefficients.tolist(), ring.gens()):
                    element = element + gen.scale(coeff)
                if not self.is_regular_element(current, element):
                    continue
                quotient = self.construct.dg_quotient(current, element)
                dim_after = self.construct.dim_h0(quotient)
                if want_sop and dim_before - dim_after != 1:
                    continue
                _, inf_after, amp_after = self.invariants.amplitude(quotient)
                steps.append(RegSeqStep(element, tried - 1, True, dim_before, dim_after,
                                        amp_before, amp_after, inf_before, inf_after))
                logger.info("Accepted regular element %s (step %d)", element, len(steps))
                current = quotient
                accepted = True
                break
            if not accepted:
                raise IncompleteSearchError(
                    f"No regular element found in {max_tries} tries after {len(steps)} steps",
                    certificate(),
                )
        return certificate()

    def quotient_chain(self, model: DGRingModel, certificate: RegSeqCertificate) -> List[DGRingModel]:
        """The models A//(x₁..xᵢ) along a certificate."""
        chain = []
        current = model
        for element in certificate.sequence:
            current = self.construct.dg_quotient(current, element)
            chain.append(current)
        return chain

    # ------------------------------------------------------------------ localization

    def supp_contains(self, module: PresentedModule, prime: Ideal) -> bool:
        """
        True iff the prime lies in the support of the module, i.e. ann(M) ⊆ p.

        Raises:
            StructuralError: If the ideal is not proper.
        """
        if self.groebner.gb_compute(prime).is_unit:
            raise StructuralError(f"{prime} is not a proper ideal")
        return self.groebner.ideal_contains(prime, self.homalg.annihilator(module))

    def check_cm_at_prime(self, model: DGRingModel, prime: Ideal) -> CMVerdict:
        """
        Compare the amplitude of A_p with that of the localized dualizing model.

        Raises:
            NotInSpectrumError: If p does not contain the H⁰ ideal.
        """
        self._require_non_positive(model, "check_cm_nonneg")
        if self.groebner.gb_compute(prime).is_unit:
            raise StructuralError(f"{prime} is not a proper ideal")
        if not self.groebner.ideal_contains(prime, model.h0_ideal):
            raise NotInSpectrumError(f"{prime} does not contain the H⁰ ideal {model.h0_ideal}")
        notes = list(self._notes(model))
        if not prime.is_variable_generated():
            logger.warning("Primality of %s is trusted, not verified", prime)
            notes.append("primality trusted")
        ring_degrees = [entry.degree for entry in self.invariants.cohomology_entries(model)
                        if self.supp_contains(entry.module, prime)]
        dual_degrees = [entry.degree for entry in self.dualizing_dg(model).table
                        if self.supp_contains(entry.module, prime)]
        amp_local, amp_dual = _span(ring_degrees), _span(dual_degrees)
        certificate = {
            "prime": str(prime),
            "degrees": ring_degrees,
            "dualizing_degrees": dual_degrees,
            "amp": amp_local,
            "amp_dualizing": amp_dual,
        }
        return CMVerdict(Verdict.from_bool(amp_local == amp_dual), "localized_dualizing",
                         certificate, tuple(notes))

    def _distinct_annihilators(self, model: DGRingModel) -> List[Ideal]:
        seen: Dict[frozenset, Ideal] = {}
        modules = [entry.module for entry in self.invariants.cohomology_entries(model)]
        modules += [entry.module for entry in self.dualizing_dg(model).table]
        for module in modules:
            ann = self.groebner.gb_compute(self.homalg.annihilator(module)).ideal()
            seen.setdefault(frozenset(ann.generators), ann)
        return list(seen.values())

    def check_cm_global(self, model: DGRingModel,
                        user_primes: Sequence[Ideal] = ()) -> CMVerdict:
        """
        Cohen-Macaulay at every prime of the spectrum, checked on one prime per stratum.

        Strata are cut out by sums of the H⁰ ideal with sets of cohomology annihilators;
        their minimal primes are computed combinatorially when monomial. A non-monomial
        stratum counts as covered only when a user prime contains it.
        """
        self._require_non_positive(model, "check_cm_nonneg")
        ring = model.ring
        annihilators = self._distinct_annihilators(model)
        candidates: Dict[frozenset, Ideal] = {}
        uncovered: List[Ideal] = []

        def add(prime: Ideal) -> None:
            key = frozenset(self.groebner.gb_compute(prime).elements)
            candidates.setdefault(key, prime)

        for size in range(len(annihilators) + 1):
            for subset in combinations(annihilators, size):
                stratum = self.groebner.sum_ideals(model.h0_ideal, *subset)
                basis = self.groebner.gb_compute(stratum)
                if basis.is_unit:
                    continue
                if basis.is_monomial:
                    for prime in self.groebner.monomial_minimal_primes(basis.ideal()):
                        add(prime)
                elif not any(self.groebner.ideal_contains(p, stratum) for p in user_primes):
                    uncovered.append(basis.ideal())
        add(ring.irrelevant_ideal())
        notes = list(self._notes(model))
        for prime in user_primes:
            if self.groebner.ideal_contains(prime, model.h0_ideal):
                add(prime)
            else:
                notes.append(f"{prime} skipped: outside the spectrum of H⁰")

        failed = []
        for prime in candidates.values():
            if not self.check_cm_at_prime(model, prime).is_cm:
                failed.append(str(prime))
        if failed:
            verdict = Verdict.NOT_CM
        elif uncovered:
            verdict = Verdict.UNKNOWN
            notes.append("non-monomial strata not covered by user primes")
        else:
            verdict = Verdict.CM
        certificate = {
            "primes": sorted(str(p) for p in candidates.values()),
            "failed": failed,
            "uncovered": [str(s) for s in uncovered],
        }
        logger.info("Global verdict for %s: %s over %d primes", model.describe(), verdict.value,
                    len(candidates))
        return CMVerdict(verdict, "stratified", certificate, tuple(notes))

    # ------------------------------------------------------------------ special families

    def check_triv_ext_cm(self, base: QuotientRing, module: PresentedModule,
                          shift: int) -> TrivialExtensionReport:
        """
        Direct verdict on R ⋉ M[s] together with the trivial-extension criterion, which
        predicts CM iff M is a Cohen-Macaulay module when its three hypotheses hold.
        """
        model = self.construct.build_trivial_extension(base, module, shift)
        direct = self.check_local_cm(model)
        quotient_module = module.over_quotient(base.ideal)
        dim_m = self.homalg.module_krull_dim(quotient_module)
        depth_m = self.invariants.depth(quotient_module)
        ring_module = self.construct.ring_module(base)
        dim_r = self.groebner.ideal_krull_dimension(base.ideal)
        depth_r = self.invariants.depth(ring_module)
        lc_dim_n, depth_n, inf_n = dim_m - shift, depth_m - shift, -shift
        hypotheses = {
            "sup_negative": -shift < 0,
            "lc_dim_equals_inf_plus_dim": lc_dim_n == inf_n + dim_r,
            "lc_dim_at_most_depth": lc_dim_n <= depth_r,
        }
        quantities = {
            "lc_dim_shifted": lc_dim_n,
            "depth_shifted": depth_n,
            "dim_module": dim_m,
            "depth_module": depth_m,
            "dim_ring": dim_r,
            "depth_ring": depth_r,
        }
        predicted = Verdict.from_bool(dim_m == depth_m) if all(hypotheses.values()) else None
        report = TrivialExtensionReport(direct, hypotheses, quantities, predicted)
        if report.agrees is False:
            logger.error("Trivial-extension criterion disagrees with the direct verdict")
        return report

    def check_cm_nonneg(self, model: DGRingModel) -> CMVerdict:
        """
        Non-negative models: dim H^{sup} = dim H⁰ and amp(RΓ) = amp.

        Raises:
            PreconditionError: For non-positive models.
        """
        if model.orientation is not Orientation.NON_NEGATIVE:
            raise PreconditionError("Model is non-positive; use check_local_cm")
        entries = self._require_cohomology(model)
        sup, _, amp = self.invariants.amplitude(model)
        d = self.construct.dim_h0(model)
        top = next(entry.krull_dim for entry in entries if entry.degree == sup)
        rgamma_amp = self.invariants.rgamma_profile(model).amplitude
        conditions = {"top_dimension": top == d, "rgamma_amplitude": rgamma_amp == amp}
        certificate = {
            "conditions": conditions,
            "dim_sup": top,
            "dim_h0": d,
            "amp": amp,
            "rgamma_amp": rgamma_amp,
            "rgamma_profile": sorted(self.invariants.rgamma_profile(model).degrees),
        }
        return CMVerdict(Verdict.from_bool(all(conditions.values())), "non_negative",
                         certificate, self._notes(model))

    # ------------------------------------------------------------------ theorem suite

    def verify_theorem_suite(self, model: DGRingModel, include_regseq: bool = False,
                             seed: int = DEFAULT_SEED,
                             max_tries: int = DEFAULT_MAX_TRIES) -> TheoremSuiteReport:
        """
        Evaluate every applicable identity and inequality on a model. A failed check points
        at a defect in the computation, not at a property of the input.
        """
        bundle = self.invariants.bundle(model)
        d = bundle.dim_h0
        dims = bundle.cohomology_dims
        checks = [TheoremCheck("dimension_bounds", all(v <= d for v in dims.values()),
                               {"dims": dims, "dim_h0": d})]
        if model.orientation is Orientation.NON_NEGATIVE:
            verdict = self.check_cm_nonneg(model)
            checks.append(TheoremCheck("nonneg_conditions", None, verdict.certificate))
            return TheoremSuiteReport(tuple(checks))

        amp, inf, depth = bundle.amp, bundle.inf, bundle.depth
        rgamma_amp = self.invariants.rgamma_amp(model)
        lc_dim = bundle.lc_dim
        by_amplitude = rgamma_amp == amp
        by_depth = bundle.seq_depth == d
        is_cm = by_amplitude and by_depth
        checks.extend([
            TheoremCheck("route_agreement", by_amplitude == by_depth,
                         {"amplitude_route": by_amplitude, "depth_route": by_depth}),
            TheoremCheck("main_amp_rgamma", amp <= rgamma_amp <= amp + d,
                         {"amp": amp, "rgamma_amp": rgamma_amp, "dim_h0": d}),
            TheoremCheck("non_vanishing", lc_dim == self.invariants.lc_dim_via_duality(model),
                         {"lc_dim": lc_dim, "profile_top": bundle.rgamma.top}),
            TheoremCheck("depth_lower_bound", depth >= inf, {"depth": depth, "inf": inf}),
            TheoremCheck("depth_dg_bound", depth <= dims.get(inf, -1) + inf,
                         {"depth": depth, "dim_inf": dims.get(inf), "inf": inf}),
            TheoremCheck("sequential_depth", bundle.seq_depth == depth - inf,
                         {"seq_depth": bundle.seq_depth, "depth": depth, "inf": inf}),
            TheoremCheck("chdepth_bound", bundle.seq_depth <= d,
                         {"seq_depth": bundle.seq_depth, "dim_h0": d}),
            TheoremCheck("lc_dim_of_ring", lc_dim == d, {"lc_dim": lc_dim, "dim_h0": d}),
        ])
        dualizing = self.dualizing_dg(model)
        checks.extend([
            TheoremCheck("main_amp_dualizing", amp <= dualizing.amp <= amp + d,
                         {"amp": amp, "amp_dualizing": dualizing.amp, "dim_h0": d}),
            TheoremCheck("cm_by_dualizing", (dualizing.amp == amp) == is_cm,
                         {"amp": amp, "amp_dualizing": dualizing.amp, "cm": is_cm}),
            TheoremCheck("dim_of_inf_cm", dims.get(inf) == d if is_cm else None,
                         {"dim_inf": dims.get(inf), "dim_h0": d}),
            TheoremCheck("zero_dimensional", is_cm if d == 0 else None, {"dim_h0": d}),
        ])
        if by_amplitude == by_depth:
            structure = self.dualizing_structure_report(model)
            checks.extend(c for c in structure.checks if c.name.startswith("structure_"))
        if include_regseq and is_cm:
            checks.append(self._regular_sequence_check(model, d, seed, max_tries))
        failures = [c.name for c in checks if c.passed is False]
        if failures:
            logger.error("Theorem checks failed for %s: %s", model.describe(), failures)
        return TheoremSuiteReport(tuple(checks))

    def _regular_sequence_check(self, model: DGRingModel, d: int, seed: int,
                                max_tries: int) -> TheoremCheck:
        try:
            certificate = self.find_regular_sequence(model, True, seed, max_tries)
        except IncompleteSearchError as exc:
            return TheoremCheck("regular_sequence", False, {"error": str(exc)})
        chain = self.quotient_chain(model, certificate)
        intermediate_cm = all(self.check_local_cm(q).is_cm for q in chain)
        amp_kept = all(step.amp_after == step.amp_before for step in certificate.steps)
        passed = (len(certificate.steps) == d and certificate.is_system_of_parameters
                  and intermediate_cm and amp_kept)
        return TheoremCheck("regular_sequence", passed, {
            "sequence": [str(e) for e in certificate.sequence],
            "intermediate_cm": intermediate_cm,
            "amp_preserved": amp_kept,
        })
