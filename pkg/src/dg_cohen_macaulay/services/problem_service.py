"""
Service parsing ``.dgcm`` problem files and turning them into models.
"""
import json
import logging
from typing import Any, Dict, List, Optional, Sequence

from src.dg_cohen_macaulay.errors import DGCMError, ProblemParseError
from src.dg_cohen_macaulay.models.algebra import (
    DEFAULT_CHARACTERISTIC,
    Ideal,
    Polynomial,
    PolynomialRing,
    QuotientRing,
)
from src.dg_cohen_macaulay.models.dg_model import DGModuleModel, DGRingModel, Orientation
from src.dg_cohen_macaulay.models.homalg import PresentedModule
from src.dg_cohen_macaulay.models.problem import ProblemFile
from src.dg_cohen_macaulay.services.dg_construct_service import DGConstructionService

logger = logging.getLogger(__name__)

CONSTRUCTION_TYPES = (
    "ring",
    "koszul",
    "trivial_extension",
    "nonneg_trivial_extension",
    "derived_fiber",
    "complex",
    "dg_quotient",
)

MODULE_TYPES = ("cyclic", "ideal", "free", "presentation", "canonical")

OPTION_KEYS = ("seed", "max_tries", "t_max")

POLYNOMIAL_LIST_KEYS = ("elements", "ideal", "generators", "h0_ideal")


class ProblemService:
    """Parses, validates and serializes problem files and builds their models."""

    def __init__(self, construct: Optional[DGConstructionService] = None):
        """
        Initialize the service.

        Args:
            construct: Model construction service; a fresh one by default.
        """
        self.construct = construct or DGConstructionService()
        self.homalg = self.construct.homalg

    # ------------------------------------------------------------------ parsing

    def parse_problem(self, text: str, source: Optional[str] = None,
                      field_char: Optional[int] = None,
                      default_field_char: int = DEFAULT_CHARACTERISTIC) -> ProblemFile:
        """
        Parse and validate a problem document.

        Args:
            text: The JSON document.
            source: File name used in diagnostics.
            field_char: Characteristic overriding the one in the file.
            default_field_char: Characteristic used when the file does not give one.

        Returns:
            The problem with every polynomial rewritten in normal form.

        Raises:
            ProblemParseError: With line/column for JSON syntax and a field path otherwise.
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProblemParseError(f"Invalid JSON: {exc.msg}", line=exc.lineno,
                                    column=exc.colno, path=source)
        if not isinstance(data, dict):
            raise ProblemParseError("A problem file must contain a JSON object", path=source)
        if "field_char" not in data:
            data["field_char"] = default_field_char
        if field_char is not None:
            data["field_char"] = field_char
        problem = ProblemFile.from_dict(data)
        self.validate(problem)
        logger.info("Parsed problem %s", problem.name or source or "<stdin>")
        return problem

    def serialize_problem(self, problem: ProblemFile) -> str:
        return json.dumps(problem.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def ring_of(self, problem: ProblemFile) -> PolynomialRing:
        if not isinstance(problem.field_char, int) or isinstance(problem.field_char, bool):
            raise ProblemParseError("Field characteristic must be an integer", path="field_char")
        if not isinstance(problem.variables, list) or \
                not all(isinstance(v, str) for v in problem.variables):
            raise ProblemParseError("Variables must be a list of names", path="variables")
        try:
            return PolynomialRing.from_names(problem.variables, problem.field_char)
        except DGCMError as exc:
            path = "field_char" if "characteristic" in str(exc).lower() else "variables"
            raise ProblemParseError(str(exc), path=path)

    def validate(self, problem: ProblemFile) -> None:
        """
        Check the problem and normalize its polynomial strings in place.

        Raises:
            ProblemParseError: On the first invalid field.
        """
        ring = self.ring_of(problem)
        problem.ideal = self._normalize_list(ring, problem.ideal, "ideal")
        problem.construction = self._normalize_construction(ring, problem.construction,
                                                            "construction")
        modules = []
        for i, entry in enumerate(problem.modules):
            path = f"modules[{i}]"
            if not isinstance(entry, dict):
                raise ProblemParseError("Module entry must be an object", path=path)
            entry = dict(entry)
            entry["module"] = self._normalize_module(ring, entry.get("module"), f"{path}.module")
            if not isinstance(entry.get("degree", 0), int):
                raise ProblemParseError("Module degree must be an integer", path=f"{path}.degree")
            modules.append(entry)
        problem.modules = modules
        problem.primes = [self._normalize_list(ring, prime, f"primes[{i}]")
                          for i, prime in enumerate(problem.primes)]
        for key, value in problem.options.items():
            if key not in OPTION_KEYS:
                raise ProblemParseError(f"Unknown option {key!r}", path=f"options.{key}")
            if not isinstance(value, int) or value < 0:
                raise ProblemParseError("Options must be non-negative integers",
                                        path=f"options.{key}")
        if not isinstance(problem.expected, dict):
            raise ProblemParseError("Expected fragments must be an object", path="expected")

    def _polynomial(self, ring: PolynomialRing, text: Any, path: str) -> Polynomial:
        poly = ring.parse(text, path=path)
        if not poly.is_homogeneous():
            raise ProblemParseError(f"Polynomial {text!r} is not homogeneous", path=path)
        return poly

    def _normalize_list(self, ring: PolynomialRing, texts: Any, path: str) -> List[str]:
        if not isinstance(texts, list):
            raise ProblemParseError("Expected a list of polynomials", path=path)
        return [str(self._polynomial(ring, t, f"{path}[{i}]")) for i, t in enumerate(texts)]

    def _normalize_matrix(self, ring: PolynomialRing, columns: Any, path: str) -> List[List[str]]:
        if not isinstance(columns, list) or not all(isinstance(c, list) for c in columns):
            raise ProblemParseError("Expected a list of columns", path=path)
        return [[str(ring.parse(t, path=f"{path}[{i}][{j}]")) for j, t in enumerate(col)]
                for i, col in enumerate(columns)]

    def _normalize_module(self, ring: PolynomialRing, descriptor: Any, path: str) -> Dict[str, Any]:
        if not isinstance(descriptor, dict):
            raise ProblemParseError("Module descriptor must be an object", path=path)
        kind = descriptor.get("type")
        if kind not in MODULE_TYPES:
            raise ProblemParseError(f"Unknown module type {kind!r}", path=f"{path}.type")
        out = dict(descriptor)
        for key in POLYNOMIAL_LIST_KEYS:
            if key in out:
                out[key] = self._normalize_list(ring, out[key], f"{path}.{key}")
        if "relations" in out:
            out["relations"] = self._normalize_matrix(ring, out["relations"], f"{path}.relations")
        if kind in ("free", "presentation") and not isinstance(out.get("degrees"), list):
            raise ProblemParseError("Module needs a list of generator degrees",
                                    path=f"{path}.degrees")
        return out

    def _normalize_construction(self, ring: PolynomialRing, descriptor: Any,
                                path: str) -> Dict[str, Any]:
        if not isinstance(descriptor, dict):
            raise ProblemParseError("Construction must be an object", path=path)
        kind = descriptor.get("type")
        if kind not in CONSTRUCTION_TYPES:
            raise ProblemParseError(f"Unknown construction type {kind!r}", path=f"{path}.type")
        out = dict(descriptor)
        for key in POLYNOMIAL_LIST_KEYS:
            if key in out:
                out[key] = self._normalize_list(ring, out[key], f"{path}.{key}")
        if kind in ("trivial_extension", "nonneg_trivial_extension"):
            if not isinstance(out.get("shift"), int):
                raise ProblemParseError("Trivial extensions need an integer shift",
                                        path=f"{path}.shift")
            out["module"] = self._normalize_module(ring, out.get("module"), f"{path}.module")
        if kind == "dg_quotient":
            out["parent"] = self._normalize_construction(ring, out.get("parent"), f"{path}.parent")
        if kind == "complex":
            terms = out.get("terms")
            if not isinstance(terms, list) or not terms:
                raise ProblemParseError("Explicit complexes need a non-empty term list",
                                        path=f"{path}.terms")
            out["terms"] = [self._normalize_module(ring, dict(t, type="presentation"),
                                                   f"{path}.terms[{i}]")
                            for i, t in enumerate(terms)]
            out["differentials"] = [
                self._normalize_matrix(ring, m, f"{path}.differentials[{i}]")
                for i, m in enumerate(out.get("differentials", []))
            ]
            if "h0_ideal" not in out:
                raise ProblemParseError("Explicit complexes need an h0_ideal", path=f"{path}.h0_ideal")
            if out.get("orientation") not in (None, "non-positive", "non-negative"):
                raise ProblemParseError("Orientation must be non-positive or non-negative",
                                        path=f"{path}.orientation")
        return out

    # ------------------------------------------------------------------ building

    def base_of(self, problem: ProblemFile) -> QuotientRing:
        ring = self.ring_of(problem)
        return QuotientRing(ring, Ideal.from_strings(ring, problem.ideal))

    def build_module(self, base: QuotientRing, descriptor: Dict[str, Any]) -> PresentedModule:
        """A presented module from a module descriptor."""
        ring = base.ring
        kind = descriptor["type"]
        degree = descriptor.get("degree", 0)
        if kind == "cyclic":
            return PresentedModule.cyclic(ring, Ideal.from_strings(ring, descriptor.get("ideal", [])),
                                          degree)
        if kind == "ideal":
            generators = Ideal.from_strings(ring, descriptor.get("generators", []))
            return self.homalg.ideal_module(generators, base.ideal).twist(degree)
        if kind == "free":
            return PresentedModule.free(ring, descriptor["degrees"])
        if kind == "presentation":
            return PresentedModule(ring, tuple(descriptor["degrees"]),
                                   _matrix(ring, descriptor.get("relations", [])))
        return self.construct.canonical_module(base).twist(degree)

    def build_model(self, problem: ProblemFile) -> DGRingModel:
        """The DG-ring model described by the problem's construction."""
        base = self.base_of(problem)
        model = self._build(base, problem.construction)
        logger.info("Built model %s", model.describe())
        return model

    def _build(self, base: QuotientRing, descriptor: Dict[str, Any]) -> DGRingModel:
        ring = base.ring
        kind = descriptor["type"]
        if kind == "ring":
            return self.construct.build_koszul_dg(base, ())
        if kind == "koszul":
            elements = [ring.parse(t) for t in descriptor.get("elements", [])]
            return self.construct.build_koszul_dg(base, elements)
        if kind == "trivial_extension":
            module = self.build_module(base, descriptor["module"])
            return self.construct.build_trivial_extension(base, module, descriptor["shift"])
        if kind == "nonneg_trivial_extension":
            module = self.build_module(base, descriptor["module"])
            return self.construct.build_nonneg_trivial_extension(base, module, descriptor["shift"])
        if kind == "derived_fiber":
            return self.construct.build_derived_fiber(base)
        if kind == "dg_quotient":
            model = self._build(base, descriptor["parent"])
            for text in descriptor.get("elements", []):
                model = self.construct.dg_quotient(model, ring.parse(text))
            return model
        lo = descriptor.get("lo", 0)
        terms = {lo + i: self.build_module(base, t) for i, t in enumerate(descriptor["terms"])}
        differentials = {lo + i: _matrix(ring, m)
                         for i, m in enumerate(descriptor.get("differentials", []))}
        complex_ = self.homalg.make_complex(terms, differentials)
        orientation = descriptor.get("orientation")
        return self.construct.build_explicit(
            base, complex_, Ideal.from_strings(ring, descriptor["h0_ideal"]),
            Orientation(orientation) if orientation else None,
        )

    def build_dg_modules(self, problem: ProblemFile, model: DGRingModel) -> List[DGModuleModel]:
        """DG-modules listed under ``modules``, each an H⁰-module placed in one degree."""
        out = []
        for i, entry in enumerate(problem.modules):
            module = self.build_module(model.base, entry["module"])
            out.append(self.construct.module_over(model, module, entry.get("degree", 0),
                                                  entry.get("label", f"M{i}")))
        return out

    def build_primes(self, ring: PolynomialRing, primes: Sequence[Sequence[str]]) -> List[Ideal]:
        return [Ideal.from_strings(ring, prime, path=f"primes[{i}]")
                for i, prime in enumerate(primes)]


def _matrix(ring: PolynomialRing, columns: Sequence[Sequence[str]]):
    return tuple(tuple(ring.parse(t) for t in col) for col in columns)
