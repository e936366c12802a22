"""
Plain-text rendering of reports.
"""
from typing import Any, Dict, List

from src.dg_cohen_macaulay.models.problem import Report
from src.dg_cohen_macaulay.utils import format_degree_set, format_invariant, truncate_text

INVARIANT_ORDER = ("amp", "sup", "inf", "depth", "seq_depth", "lc_dim", "rgamma_amp", "dim_h0")


class ReportRenderer:
    """Formats a report for the terminal."""

    def __init__(self, width: int = 100):
        self.width = width

    def render(self, report: Report) -> str:
        lines: List[str] = [f"== {report.command} =="]
        if report.command == "examples":
            lines.extend(self._examples(report))
            return "\n".join(lines)
        problem = report.input
        title = problem.get("name") or "problem"
        lines.append(f"problem: {title}")
        if problem.get("description"):
            lines.append(f"  {truncate_text(problem['description'], self.width)}")
        if report.cohomology:
            lines.append("cohomology:")
            for entry in report.cohomology:
                lines.append(f"  H^{entry['degree']}: generators in degrees "
                             f"{entry['generator_degrees']}, dim {entry['krull_dim']}")
        if report.invariants:
            lines.append("invariants:")
            for key in INVARIANT_ORDER:
                if key in report.invariants:
                    lines.append(f"  {key}: {report.invariants[key]}")
            lines.append(f"  rgamma profile: {format_degree_set(report.invariants.get('rgamma_profile', []))}")
        if report.verdicts:
            lines.append("verdicts:")
            lines.extend(self._verdicts(report.verdicts, "  "))
        if report.certificates:
            lines.append("certificates:")
            for name, value in sorted(report.certificates.items()):
                lines.append(f"  {name}: {truncate_text(self._compact(value), self.width)}")
        if report.theorems:
            lines.append("theorems:")
            for check in report.theorems:
                status = {True: "PASS", False: "FAIL", None: "n/a"}[check["passed"]]
                lines.append(f"  [{status}] {check['name']}")
        if report.timing:
            lines.append(f"time: {report.timing.get('seconds', 0):.3f}s")
        return "\n".join(lines)

    def _verdicts(self, verdicts: Dict[str, Any], indent: str) -> List[str]:
        lines = []
        for name, value in sorted(verdicts.items()):
            if isinstance(value, dict) and "verdict" in value:
                cert = ", ".join(f"{k}={format_invariant(v)}"
                                 for k, v in sorted(value["certificate"].items())
                                 if not isinstance(v, (dict, list)))
                lines.append(f"{indent}{name}: {value['verdict']} ({value['route']}) {cert}".rstrip())
                for note in value.get("notes", []):
                    lines.append(f"{indent}  note: {note}")
            elif isinstance(value, dict):
                lines.append(f"{indent}{name}:")
                lines.extend(self._verdicts(value, indent + "  "))
        return lines

    def _examples(self, report: Report) -> List[str]:
        lines = []
        for name, entry in sorted(report.certificates.get("examples", {}).items()):
            status = ""
            if "passed" in entry:
                status = " [ok]" if entry["passed"] else " [MISMATCH]"
            lines.append(f"{name}{status}: {truncate_text(entry.get('description', ''), self.width)}")
            for command, fragment in sorted(entry.get("expected", {}).items()):
                pairs = ", ".join(f"{k}={v}" for k, v in sorted(fragment.items()))
                lines.append(f"  {command}: {truncate_text(pairs, self.width)}")
        return lines

    @staticmethod
    def _compact(value: Any) -> str:
        if isinstance(value, dict):
            return "{" + ", ".join(f"{k}: {ReportRenderer._compact(v)}"
                                   for k, v in sorted(value.items())) + "}"
        if isinstance(value, list):
            return "[" + ", ".join(ReportRenderer._compact(v) for v in value) + "]"
        return str(value)
