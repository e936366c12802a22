"""
Pytest configuration file.
"""
import pytest
import sys
import os

import numpy as np

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.dg_cohen_macaulay.models.algebra import Ideal, PolynomialRing, QuotientRing  # noqa: E402
from src.dg_cohen_macaulay.services.cm_analysis_service import CohenMacaulayService  # noqa: E402


@pytest.fixture(scope="session")
def cm_service():
    """
    One analysis service for the whole session so Gröbner bases and resolutions are shared.
    """
    return CohenMacaulayService()


@pytest.fixture
def ring_xy():
    """
    Provide k[x, y] over the default prime field.
    """
    return PolynomialRing.from_names(["x", "y"])


@pytest.fixture
def node_base(ring_xy):
    """
    Provide the node k[x, y]/(xy).
    """
    x, y = ring_xy.gens()
    return QuotientRing(ring_xy, Ideal(ring_xy, (x * y,)))


@pytest.fixture
def corpus_rng():
    """
    Seeded generator for the randomized corpus.
    """
    return np.random.default_rng(20240611)
