"""
Service computing amplitude, depth, local-cohomology Krull dimension and the
nonvanishing profile of local cohomology through graded local duality over P.
"""
import logging
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Union

from src.dg_cohen_macaulay.errors import UnsupportedInputError
from src.dg_cohen_macaulay.models.dg_model import (
    CohomologyEntry,
    DGModuleModel,
    DGRingModel,
    amplitude_data,
)
from src.dg_cohen_macaulay.models.homalg import Complex, PresentedModule
from src.dg_cohen_macaulay.models.invariants import (
    NEG_INF,
    Extended,
    InvariantBundle,
    RGammaProfile,
)
from src.dg_cohen_macaulay.services.dg_construct_service import DGConstructionService
from src.dg_cohen_macaulay.services.groebner_service import Vector, vector_to_column

logger = logging.getLogger(__name__)

Subject = Union[DGRingModel, DGModuleModel, Complex, PresentedModule]


class InvariantService:
    """Numerical invariants of models, complexes and modules."""

    def __init__(self, construct: Optional[DGConstructionService] = None):
        """
        Initialize the service.

        Args:
            construct: Model construction service; a fresh one by default.
        """
        self.construct = construct or DGConstructionService()
        self.homalg = self.construct.homalg
        self.groebner = self.construct.groebner

    # ------------------------------------------------------------------ subjects

    @staticmethod
    def complex_of(subject: Subject) -> Complex:
        if isinstance(subject, (DGRingModel, DGModuleModel)):
            return subject.complex
        if isinstance(subject, PresentedModule):
            return Complex.concentrated(subject, 0)
        return subject

    def cohomology_entries(self, subject: Subject) -> List[CohomologyEntry]:
        """Nonzero cohomology modules with Krull dimensions."""
        if isinstance(subject, (DGRingModel, DGModuleModel)):
            return self.construct.cohomology_table(subject)
        complex_ = self.complex_of(subject)
        entries = []
        for degree in range(complex_.lo, complex_.hi + 1):
            module = self.homalg.cohomology_at(complex_, degree)
            if not self.homalg.is_zero_module(module):
                entries.append(CohomologyEntry(degree, module, self.homalg.module_krull_dim(module)))
        return entries

    def _memo(self, subject: Subject, key: str, compute):
        if isinstance(subject, (DGRingModel, DGModuleModel)):
            return subject.memoized(key, compute)
        return compute()

    # ------------------------------------------------------------------ profile

    def rgamma_profile(self, subject: Subject, nvars: Optional[int] = None) -> RGammaProfile:
        """
        Degrees i with Hⁱ_m(C) ≠ 0, read off as {n - j : Ext^j_P(C, P) ≠ 0}.

        When the differential is zero the profile is the union of the shifted module
        profiles of the cohomology modules.

        Raises:
            UnsupportedInputError: If a term of the complex is not homogeneous.
        """
        def compute():
            complex_ = self.complex_of(subject)
            if not all(term.is_homogeneous for term in complex_.terms):
                raise UnsupportedInputError("Local cohomology needs homogeneous presentations")
            n = complex_.ring.nvars if nvars is None else nvars
            degrees = set()
            witnesses: Dict[int, PresentedModule] = {}
            if complex_.has_zero_differential:
                route = "zero-differential"
                for entry in self.cohomology_entries(subject):
                    ext = self.homalg.ext_profile(Complex.concentrated(entry.module, 0))
                    for j, module in ext.items():
                        degree = entry.degree + n - j
                        degrees.add(degree)
                        witnesses.setdefault(degree, module)
            else:
                route = "duality"
                for j, module in self.homalg.ext_profile(complex_).items():
                    degrees.add(n - j)
                    witnesses[n - j] = module
            logger.info("Local cohomology profile %s via %s", sorted(degrees), route)
            return RGammaProfile(frozenset(degrees), witnesses, route)
        if nvars is not None:
            return compute()
        return self._memo(subject, "rgamma_profile", compute)

    # ------------------------------------------------------------------ invariants

    def amplitude(self, subject: Subject):
        """(sup, inf, amp) of the cohomology."""
        return amplitude_data([entry.degree for entry in self.cohomology_entries(subject)])

    def depth(self, subject: Subject) -> Extended:
        """Minimum of the RΓ profile; -inf for zero input."""
        return self.rgamma_profile(subject).depth

    def lc_dim(self, subject: Subject) -> Extended:
        """max over nonzero Hℓ of dim Hℓ + ℓ; -inf for zero input."""
        entries = self.cohomology_entries(subject)
        if not entries:
            return NEG_INF
        return max(entry.krull_dim + entry.degree for entry in entries)

    def lc_dim_via_duality(self, subject: Subject) -> Extended:
        """Maximum of the RΓ profile."""
        return self.rgamma_profile(subject).top

    def rgamma_amp(self, subject: Subject) -> Extended:
        """lc.dim - depth."""
        lc_dim, depth = self.lc_dim(subject), self.depth(subject)
        if lc_dim == NEG_INF or depth == NEG_INF:
            return NEG_INF
        return lc_dim - depth

    def seq_depth(self, subject: Subject) -> Extended:
        """depth - inf."""
        _, inf, _ = self.amplitude(subject)
        depth = self.depth(subject)
        if depth == NEG_INF:
            return NEG_INF
        return depth - inf

    def dim_h0(self, subject: Subject) -> int:
        if isinstance(subject, (DGRingModel, DGModuleModel)):
            return self.construct.dim_h0(subject)
        h0 = self.homalg.cohomology_at(self.complex_of(subject), 0)
        return self.homalg.module_krull_dim(h0)

    def bundle(self, subject: Subject) -> InvariantBundle:
        """All invariants of a subject in one record."""
        def compute():
            sup, inf, amp = self.amplitude(subject)
            profile = self.rgamma_profile(subject)
            dims = {entry.degree: entry.krull_dim for entry in self.cohomology_entries(subject)}
            return InvariantBundle(
                amp=amp, sup=sup, inf=inf,
                depth=profile.depth,
                seq_depth=self.seq_depth(subject),
                lc_dim=self.lc_dim(subject),
                rgamma=profile,
                cohomology_dims=dims,
                dim_h0=self.dim_h0(subject),
            )
        return self._memo(subject, "bundle", compute)

    # ------------------------------------------------------------------ cross-checks

    def depth_via_koszul(self, module: PresentedModule) -> Extended:
        """
        Smallest i with Extⁱ_P(k, M) ≠ 0, from the Koszul resolution of k and Hom into M.
        """
        if self.homalg.is_zero_module(module):
            return NEG_INF
        ring = module.ring
        n = ring.nvars
        resolution = self.homalg.free_resolution(
            PresentedModule.cyclic(ring, ring.irrelevant_ideal()))
        hom = self._hom_into(resolution, module)
        for degree in range(0, n + 1):
            if not self.homalg.is_zero_module(self.homalg.cohomology_at(hom, degree)):
                return degree
        return NEG_INF

    def _hom_into(self, resolution: Complex, module: PresentedModule) -> Complex:
        """Hom(F, M) for a free complex F in degrees [-n, 0], placed in degrees [0, n]."""
        ring = module.ring
        m_rank = module.rank
        terms = []
        for i in range(-resolution.hi, -resolution.lo + 1):
            free = resolution.term(-i)
            degrees = tuple(module.degrees[g] - free.degrees[row]
                            for row in range(free.rank) for g in range(m_rank))
            block = module
            summed = PresentedModule.zero(ring)
            for _ in range(free.rank):
                summed = summed.direct_sum(block)
            terms.append(PresentedModule(ring, degrees, summed.relations))
        diffs = []
        zero = ring.zero()
        for i in range(-resolution.hi, -resolution.lo):
            matrix = resolution.differential(-i - 1)
            rows = resolution.term(-i).rank
            cols = len(matrix)
            columns = []
            for row in range(rows):
                for g in range(m_rank):
                    entries = [zero] * (cols * m_rank)
                    for col in range(cols):
                        entries[col * m_rank + g] = matrix[col][row]
                    columns.append(tuple(entries))
            diffs.append(tuple(columns))
        return Complex(-resolution.hi, -resolution.lo, tuple(terms), tuple(diffs))

    def koszul_colimit_profile_oracle(self, module: PresentedModule, t_max: int = 4) -> FrozenSet[int]:
        """
        Degrees i where the image of Hⁱ(K(x; M)) in Hⁱ(K(x^{t_max}; M)) is nonzero.

        Every such degree carries a class that survives to stage t_max of the colimit
        computing Hⁱ_m(M). Advisory only; never overrides the duality route.
        """
        module = self.homalg.prune(module)
        if self.homalg.is_zero_module(module):
            return frozenset()
        ring = module.ring
        p = ring.characteristic
        n = ring.nvars
        first = self._koszul_cochain(module, 1)
        last = self._koszul_cochain(module, t_max)
        subsets = [list(combinations(range(n), size)) for size in range(n + 1)]
        found = set()
        for degree in range(n + 1):
            term = first.term(degree)
            if degree < n:
                following = first.term(degree + 1)
                cycles = self.homalg.kernel_vectors(
                    ring, self.homalg._matrix_vectors(first.differential(degree)),
                    term.degrees, following.degrees, self.homalg.relation_vectors(following))
            else:
                cycles = [{(j, ring.zero_monomial): 1} for j in range(term.rank)]
            images = [self._transition(v, subsets[degree], module.rank, t_max) for v in cycles]
            target = last.term(degree)
            ambient = self.homalg.relation_vectors(target)
            if degree > 0:
                ambient += [v for v in self.homalg._matrix_vectors(last.differential(degree - 1)) if v]
            if self.homalg.minimal_generators(images, target.degrees, ambient, p):
                found.add(degree)
        return frozenset(found)

    @staticmethod
    def _transition(vec: Vector, subsets, rank: int, t: int) -> Vector:
        out = {}
        for (comp, mono), coeff in vec.items():
            subset = subsets[comp // rank]
            shifted = list(mono)
            for j in subset:
                shifted[j] += t - 1
            out[(comp, tuple(shifted))] = coeff
        return out

    def _koszul_cochain(self, module: PresentedModule, t: int) -> Complex:
        """Cohomological Koszul complex K(x₁^t..xₙ^t; M) in degrees [0, n]."""
        ring = module.ring
        n = ring.nvars
        rank = module.rank
        subsets = [list(combinations(range(n), size)) for size in range(n + 1)]
        terms = []
        for size in range(n + 1):
            summed = PresentedModule.zero(ring)
            for _ in subsets[size]:
                summed = summed.direct_sum(module)
            degrees = tuple(d + t * size for _ in subsets[size] for d in module.degrees)
            terms.append(PresentedModule(ring, degrees, summed.relations))
        diffs = []
        for size in range(n):
            index = {s: i for i, s in enumerate(subsets[size + 1])}
            columns = []
            for subset in subsets[size]:
                for g in range(rank):
                    vec: Vector = {}
                    for j in range(n):
                        if j in subset:
                            continue
                        sign = -1 if sum(1 for s in subset if s < j) % 2 else 1
                        bigger = tuple(sorted(subset + (j,)))
                        exps = [0] * n
                        exps[j] = t
                        vec[(index[bigger] * rank + g, tuple(exps))] = sign % ring.characteristic
                    columns.append(vector_to_column(ring, vec, len(subsets[size + 1]) * rank))
            diffs.append(tuple(columns))
        return Complex(0, n, tuple(terms), tuple(diffs))
