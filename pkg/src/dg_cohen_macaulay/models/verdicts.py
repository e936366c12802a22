"""
Cohen-Macaulay verdicts, regular-sequence certificates and dualizing-model reports.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from src.dg_cohen_macaulay.models.algebra import Polynomial
from src.dg_cohen_macaulay.models.dg_model import CohomologyEntry
from src.dg_cohen_macaulay.models.homalg import Complex
from src.dg_cohen_macaulay.models.invariants import Extended, encode_extended


class Verdict(Enum):
    CM = "CM"
    NOT_CM = "NOT_CM"
    UNKNOWN = "UNKNOWN"

    @classmethod
    def from_bool(cls, value: bool) -> 'Verdict':
        return cls.CM if value else cls.NOT_CM


def _encode(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float):
        return encode_extended(value)
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_encode(v) for v in value]
        return sorted(items) if isinstance(value, (set, frozenset)) else items
    if isinstance(value, Polynomial):
        return str(value)
    return value


@dataclass(frozen=True)
class CMVerdict:
    """Outcome of a Cohen-Macaulay check with the quantities that decided it."""
    verdict: Verdict
    route: str
    certificate: Dict[str, Any] = field(default_factory=dict, hash=False)
    notes: Tuple[str, ...] = ()

    @property
    def is_cm(self) -> bool:
        return self.verdict is Verdict.CM

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "route": self.route,
            "certificate": _encode(self.certificate),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class RegSeqStep:
    """One accepted element of a regular sequence and the effect of quotienting by it."""
    element: Polynomial
    candidate_index: int
    kernel_is_zero: bool
    dim_before: int
    dim_after: int
    amp_before: Extended
    amp_after: Extended
    inf_before: Extended
    inf_after: Extended

    @property
    def dim_drop(self) -> int:
        return self.dim_before - self.dim_after

    def to_dict(self) -> Dict[str, Any]:
        return {
            "element": str(self.element),
            "candidate_index": self.candidate_index,
            "kernel_is_zero": self.kernel_is_zero,
            "dim_before": self.dim_before,
            "dim_after": self.dim_after,
            "amp_before": encode_extended(self.amp_before),
            "amp_after": encode_extended(self.amp_after),
            "inf_before": encode_extended(self.inf_before),
            "inf_after": encode_extended(self.inf_after),
        }


@dataclass(frozen=True)
class RegSeqCertificate:
    """A regular sequence found by randomized search, with per-step records."""
    steps: Tuple[RegSeqStep, ...]
    target_length: Extended
    want_sop: bool
    seed: int
    candidates_tried: int

    @property
    def sequence(self) -> Tuple[Polynomial, ...]:
        return tuple(step.element for step in self.steps)

    @property
    def complete(self) -> bool:
        return len(self.steps) == self.target_length

    @property
    def is_system_of_parameters(self) -> bool:
        if not self.steps:
            return self.want_sop and self.target_length == 0
        return self.steps[-1].dim_after == 0 and all(s.dim_drop == 1 for s in self.steps)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sequence": [str(e) for e in self.sequence],
            "steps": [s.to_dict() for s in self.steps],
            "target_length": encode_extended(self.target_length),
            "complete": self.complete,
            "want_sop": self.want_sop,
            "is_system_of_parameters": self.is_system_of_parameters,
            "seed": self.seed,
            "candidates_tried": self.candidates_tried,
        }


@dataclass(frozen=True)
class DualizingModel:
    """RHom_P(A, P) shifted so that inf = -dim H⁰(A)."""
    complex: Complex
    shift: int
    table: Tuple[CohomologyEntry, ...]
    dim_h0: int
    nvars: int

    @property
    def degrees(self) -> List[int]:
        return [entry.degree for entry in self.table]

    @property
    def inf(self) -> int:
        return min(self.degrees)

    @property
    def sup(self) -> int:
        return max(self.degrees)

    @property
    def amp(self) -> int:
        return self.sup - self.inf

    @property
    def normalized(self) -> bool:
        return self.shift == self.nvars

    def dim_at(self, degree: int) -> int:
        for entry in self.table:
            if entry.degree == degree:
                return entry.krull_dim
        return -1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "shift": self.shift,
            "normalized": self.normalized,
            "inf": self.inf,
            "sup": self.sup,
            "amp": self.amp,
            "table": [entry.to_dict() for entry in self.table],
        }


@dataclass(frozen=True)
class TheoremCheck:
    """A single identity or inequality; ``passed`` is None when it does not apply."""
    name: str
    passed: Optional[bool]
    detail: Dict[str, Any] = field(default_factory=dict, hash=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": _encode(self.detail)}


@dataclass(frozen=True)
class StructureReport:
    """Per-degree dimensions of the dualizing model and the structural checks."""
    dualizing: DualizingModel
    checks: Tuple[TheoremCheck, ...]
    mcm: Optional[CMVerdict] = None

    @property
    def all_passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def check(self, name: str) -> TheoremCheck:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dualizing": self.dualizing.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
            "mcm": self.mcm.to_dict() if self.mcm else None,
        }


@dataclass(frozen=True)
class TrivialExtensionReport:
    """Hypotheses and conclusion of the trivial-extension criterion."""
    direct: CMVerdict
    hypotheses: Dict[str, bool] = field(hash=False)
    quantities: Dict[str, Any] = field(hash=False)
    predicted: Optional[Verdict] = None

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def agrees(self) -> Optional[bool]:
        if self.predicted is None:
            return None
        return self.predicted is self.direct.verdict

    def to_dict(self) -> Dict[str, Any]:
        return {
            "direct": self.direct.to_dict(),
            "hypotheses": dict(self.hypotheses),
            "quantities": _encode(self.quantities),
            "predicted": self.predicted.value if self.predicted else None,
            "agrees": self.agrees,
        }


@dataclass(frozen=True)
class TheoremSuiteReport:
    """All identities and inequalities evaluated on one model."""
    checks: Tuple[TheoremCheck, ...]

    @property
    def failures(self) -> List[TheoremCheck]:
        return [c for c in self.checks if c.passed is False]

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def check(self, name: str) -> TheoremCheck:
        return next(c for c in self.checks if c.name == name)

    def to_list(self) -> List[Dict[str, Any]]:
        return [c.to_dict() for c in self.checks]
