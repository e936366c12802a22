"""
Shared builders for the analyzer tests.
"""
from src.dg_cohen_macaulay.cli.fixture_loader import FixtureLoader
from src.dg_cohen_macaulay.models.algebra import Ideal, PolynomialRing, QuotientRing
from src.dg_cohen_macaulay.models.homalg import PresentedModule
from src.dg_cohen_macaulay.services.cm_analysis_service import CohenMacaulayService
from src.dg_cohen_macaulay.services.problem_service import ProblemService

_SHARED = {}


def poly_ring(*names, characteristic=32003):
    return PolynomialRing.from_names(list(names), characteristic)


def quotient(ring, *generators):
    """R = P/(generators); generators may be strings."""
    polys = tuple(ring.parse(g) if isinstance(g, str) else g for g in generators)
    return QuotientRing(ring, Ideal(ring, polys))


def ideal(ring, *generators):
    return Ideal(ring, tuple(ring.parse(g) for g in generators))


def cyclic(ring, *generators, degree=0):
    """P/(generators) generated in the given degree."""
    return PresentedModule.cyclic(ring, ideal(ring, *generators), degree)


def shared_cm_service():
    """A process-wide analysis service, so caches survive across test classes."""
    if "cm" not in _SHARED:
        _SHARED["cm"] = CohenMacaulayService()
    return _SHARED["cm"]


def load_problem(name, problems=None):
    """Parse a bundled fixture."""
    problems = problems or ProblemService(shared_cm_service().construct)
    source, text = FixtureLoader().resolve(name)
    return problems.parse_problem(text, source)


def load_model(name):
    """Build a bundled fixture's model once per process."""
    key = ("model", name)
    if key not in _SHARED:
        problems = ProblemService(shared_cm_service().construct)
        _SHARED[key] = problems.build_model(load_problem(name, problems))
    return _SHARED[key]
