"""
Problem files, analysis options and reports.
"""
import json
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional

from src.dg_cohen_macaulay.models.algebra import DEFAULT_CHARACTERISTIC
from src.dg_cohen_macaulay.utils import get_env_int, get_env_var, load_environment

REPORT_SCHEMA = 1

OUTPUT_FORMATS = ("text", "json")


@dataclass(frozen=True)
class AnalysisOptions:
    """Knobs shared by every command."""
    field_char: int = DEFAULT_CHARACTERISTIC
    seed: int = 1
    max_tries: int = 64
    t_max: int = 4
    output_format: str = "text"

    @classmethod
    def from_env(cls) -> 'AnalysisOptions':
        """
        Build options from ``DGCM_*`` environment variables (and a ``.env`` file).

        Raises:
            ValueError: If a variable does not parse or the format is unknown.
        """
        load_environment()
        output_format = get_env_var("DGCM_FORMAT", "text")
        if output_format not in OUTPUT_FORMATS:
            raise ValueError(f"DGCM_FORMAT must be one of {OUTPUT_FORMATS}, got {output_format!r}")
        return cls(
            field_char=get_env_int("DGCM_FIELD_CHAR", DEFAULT_CHARACTERISTIC),
            seed=get_env_int("DGCM_SEED", 1),
            max_tries=get_env_int("DGCM_MAX_TRIES", 64),
            t_max=get_env_int("DGCM_T_MAX", 4),
            output_format=output_format,
        )

    def with_overrides(self, **overrides: Any) -> 'AnalysisOptions':
        """Copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict[str, Any]:
        return {"seed": self.seed, "max_tries": self.max_tries, "t_max": self.t_max}


@dataclass
class ProblemFile:
    """A validated problem: ring data, construction descriptor and optional extras."""
    variables: List[str]
    construction: Dict[str, Any]
    field_char: int = DEFAULT_CHARACTERISTIC
    ideal: List[str] = field(default_factory=list)
    name: str = ""
    description: str = ""
    modules: List[Dict[str, Any]] = field(default_factory=list)
    primes: List[List[str]] = field(default_factory=list)
    options: Dict[str, int] = field(default_factory=dict)
    expected: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ProblemFile':
        """Create a ProblemFile from a decoded JSON document (no algebraic validation)."""
        return cls(
            variables=list(data.get("variables", [])),
            construction=dict(data.get("construction", {})),
            field_char=data.get("field_char", DEFAULT_CHARACTERISTIC),
            ideal=list(data.get("ideal", [])),
            name=data.get("name", ""),
            description=data.get("description", ""),
            modules=list(data.get("modules", [])),
            primes=[list(p) for p in data.get("primes", [])],
            options=dict(data.get("options", {})),
            expected=dict(data.get("expected", {})),
        )

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "field_char": self.field_char,
            "variables": list(self.variables),
            "ideal": list(self.ideal),
            "construction": self.construction,
        }
        if self.name:
            data["name"] = self.name
        if self.description:
            data["description"] = self.description
        if self.modules:
            data["modules"] = self.modules
        if self.primes:
            data["primes"] = self.primes
        if self.options:
            data["options"] = self.options
        if self.expected:
            data["expected"] = self.expected
        return data


@dataclass
class Report:
    """Machine-readable outcome of one command."""
    command: str
    input: Dict[str, Any] = field(default_factory=dict)
    cohomology: List[Dict[str, Any]] = field(default_factory=list)
    invariants: Dict[str, Any] = field(default_factory=dict)
    verdicts: Dict[str, Any] = field(default_factory=dict)
    certificates: Dict[str, Any] = field(default_factory=dict)
    theorems: List[Dict[str, Any]] = field(default_factory=list)
    timing: Dict[str, float] = field(default_factory=dict)
    schema: int = REPORT_SCHEMA

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = {
            "schema": self.schema,
            "command": self.command,
            "input": self.input,
            "cohomology": self.cohomology,
            "invariants": self.invariants,
            "verdicts": self.verdicts,
            "certificates": self.certificates,
            "theorems": self.theorems,
        }
        if include_timing:
            data["timing"] = self.timing
        return data

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True, ensure_ascii=False)

    def lookup(self, dotted_path: str) -> Any:
        """
        Value at a dotted path such as ``verdicts.local.verdict`` or ``theorems.0.passed``.

        Raises:
            KeyError: If the path does not exist in the report.
        """
        node: Any = self.to_dict()
        for part in dotted_path.split("."):
            if isinstance(node, list):
                try:
                    node = node[int(part)]
                except (ValueError, IndexError):
                    raise KeyError(dotted_path)
            elif isinstance(node, dict) and part in node:
                node = node[part]
            else:
                raise KeyError(dotted_path)
        return node

    def verdict_values(self) -> List[str]:
        """Every verdict string in the report, in key order."""
        values = []
        for key in sorted(self.verdicts):
            entry = self.verdicts[key]
            if isinstance(entry, dict) and "verdict" in entry:
                values.append(entry["verdict"])
            elif isinstance(entry, dict):
                values.extend(v["verdict"] for _, v in sorted(entry.items())
                              if isinstance(v, dict) and "verdict" in v)
        return values

    def mismatches(self, expected: Dict[str, Any]) -> Dict[str, Optional[Any]]:
        """Expected fragments that do not match, mapped to the actual value (None if absent)."""
        out = {}
        for path, value in expected.items():
            try:
                actual = self.lookup(path)
            except KeyError:
                out[path] = None
                continue
            if actual != value:
                out[path] = actual
        return out
