"""
Service running analysis commands on problems and collecting the results into reports.
"""
import logging
import time
from typing import Dict, List, Optional, Sequence, Tuple

from src.dg_cohen_macaulay.errors import PreconditionError
from src.dg_cohen_macaulay.models.dg_model import DGRingModel, Orientation
from src.dg_cohen_macaulay.models.problem import AnalysisOptions, ProblemFile, Report
from src.dg_cohen_macaulay.services.cm_analysis_service import CohenMacaulayService
from src.dg_cohen_macaulay.services.problem_service import ProblemService

logger = logging.getLogger(__name__)

COMMANDS = (
    "analyze",
    "check-cm",
    "check-cm-at",
    "check-cm-global",
    "check-cm-nonneg",
    "regseq",
    "dualizing",
    "verify",
    "examples",
)


class ReportService:
    """Runs one command end to end and returns its report."""

    def __init__(self, cm: Optional[CohenMacaulayService] = None,
                 problems: Optional[ProblemService] = None):
        """
        Initialize the service.

        Args:
            cm: Cohen-Macaulay analysis service; a fresh one by default.
            problems: Problem service sharing the same construction service by default.
        """
        self.cm = cm or CohenMacaulayService()
        self.invariants = self.cm.invariants
        self.problems = problems or ProblemService(self.cm.construct)

    def run_command(self, command: str, problem: Optional[ProblemFile],
                    options: AnalysisOptions, primes: Sequence[Sequence[str]] = (),
                    want_sop: bool = False,
                    fixtures: Sequence[Tuple[str, ProblemFile]] = (),
                    check: bool = False,
                    overrides: Optional[Dict[str, int]] = None) -> Report:
        """
        Run a command.

        Args:
            command: One of ``COMMANDS``.
            problem: The parsed problem; unused for ``examples``.
            options: Seed, search budget and oracle stage.
            primes: Extra primes as generator lists, on top of those in the problem.
            want_sop: Ask ``regseq`` for a system of parameters.
            fixtures: Named problems listed by ``examples``.
            check: Make ``examples`` recompute every expected fragment.
            overrides: Command-line values that win over the problem file options.

        Returns:
            The report.

        Raises:
            ValueError: For unknown commands.
        """
        if command not in COMMANDS:
            raise ValueError(f"Unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
        started = time.perf_counter()
        if command == "examples":
            report = self.run_examples(fixtures, options, check)
        else:
            report = self._run_problem(command, problem, options, primes, want_sop,
                                       overrides or {})
        report.timing = {"seconds": round(time.perf_counter() - started, 6)}
        logger.info("Command %s finished in %.3fs", command, report.timing["seconds"])
        return report

    # ------------------------------------------------------------------ problem commands

    def _run_problem(self, command: str, problem: ProblemFile, options: AnalysisOptions,
                     primes: Sequence[Sequence[str]], want_sop: bool,
                     overrides: Dict[str, int]) -> Report:
        if problem is None:
            raise ValueError(f"Command {command} needs a problem file")
        options = options.with_overrides(**problem.options).with_overrides(**overrides)
        model = self.problems.build_model(problem)
        report = Report(command)
        report.input = dict(problem.to_dict(), options=options.to_dict())
        report.input.pop("expected", None)
        report.cohomology = [e.to_dict() for e in self.invariants.cohomology_entries(model)]
        report.invariants = self.invariants.bundle(model).to_dict()
        report.invariants["orientation"] = model.orientation.value
        non_negative = model.orientation is Orientation.NON_NEGATIVE

        if command == "analyze":
            self._local(report, model)
            self._modules(report, problem, model)
            self._oracle(report, model, options.t_max)
        elif command == "check-cm":
            if non_negative:
                raise PreconditionError("check-cm needs a non-positive model; use check-cm-nonneg")
            self._local(report, model)
        elif command == "check-cm-nonneg":
            if not non_negative:
                raise PreconditionError("check-cm-nonneg needs a non-negative model; use check-cm")
            self._local(report, model)
        elif command == "check-cm-at":
            ideals = self._primes(problem, model, primes) or [model.ring.irrelevant_ideal()]
            report.verdicts["at_prime"] = {
                str(p): self.cm.check_cm_at_prime(model, p).to_dict() for p in ideals
            }
        elif command == "check-cm-global":
            verdict = self.cm.check_cm_global(model, self._primes(problem, model, primes))
            report.verdicts["global"] = verdict.to_dict()
        elif command == "regseq":
            certificate = self.cm.find_regular_sequence(model, want_sop, options.seed,
                                                        options.max_tries)
            report.certificates["regseq"] = certificate.to_dict()
        elif command == "dualizing":
            structure = self.cm.dualizing_structure_report(model)
            report.certificates["dualizing"] = structure.to_dict()
            report.theorems = [c.to_dict() for c in structure.checks]
            if structure.mcm is not None:
                report.verdicts["dualizing_mcm"] = structure.mcm.to_dict()
        elif command == "verify":
            if not non_negative:
                self._local(report, model)
            suite = self.cm.verify_theorem_suite(model, include_regseq=not non_negative,
                                                 seed=options.seed, max_tries=options.max_tries)
            report.theorems = suite.to_list()
        return report

    def _local(self, report: Report, model: DGRingModel) -> None:
        if model.orientation is Orientation.NON_NEGATIVE:
            report.verdicts["nonneg"] = self.cm.check_cm_nonneg(model).to_dict()
        else:
            report.verdicts["local"] = self.cm.check_local_cm(model).to_dict()

    def _modules(self, report: Report, problem: ProblemFile, model: DGRingModel) -> None:
        if not problem.modules or model.orientation is Orientation.NON_NEGATIVE:
            return
        verdicts = {}
        for module in self.problems.build_dg_modules(problem, model):
            verdict = self.cm.check_cm_module(model, module)
            verdicts[module.label] = verdict.to_dict()
            if verdict.is_cm:
                verdicts[f"{module.label}_maximal"] = self.cm.check_mcm_module(model, module).to_dict()
        report.verdicts["modules"] = verdicts

    def _oracle(self, report: Report, model: DGRingModel, t_max: int) -> None:
        oracle = {}
        for entry in self.invariants.cohomology_entries(model):
            found = self.invariants.koszul_colimit_profile_oracle(entry.module, t_max)
            profile = self.invariants.rgamma_profile(entry.module).degrees
            oracle[str(entry.degree)] = {
                "oracle": sorted(found),
                "profile": sorted(profile),
                "contained": found <= profile,
            }
        report.certificates["koszul_oracle"] = oracle

    def _primes(self, problem: ProblemFile, model: DGRingModel,
                extra: Sequence[Sequence[str]]) -> List:
        ring = model.ring
        ideals = self.problems.build_primes(ring, problem.primes)
        ideals += self.problems.build_primes(ring, extra)
        return ideals

    # ------------------------------------------------------------------ fixtures

    def run_examples(self, fixtures: Sequence[Tuple[str, ProblemFile]],
                     options: AnalysisOptions, check: bool = False) -> Report:
        """
        List bundled fixtures with their expected verdicts; with ``check``, recompute each
        expected fragment and record mismatches.

        Expected fragments are grouped by command: ``{"check-cm": {"verdicts.local.verdict": "CM"}}``.
        """
        report = Report("examples")
        listing: Dict[str, Dict] = {}
        for name, problem in fixtures:
            entry = {"description": problem.description, "expected": problem.expected}
            if check:
                mismatches = {}
                for command, fragment in sorted(problem.expected.items()):
                    result = self._run_problem(command, problem, options, (), command == "regseq", {})
                    bad = result.mismatches(fragment)
                    if bad:
                        mismatches[command] = bad
                entry["mismatches"] = mismatches
                entry["passed"] = not mismatches
                if mismatches:
                    logger.error("Fixture %s does not match: %s", name, mismatches)
            listing[name] = entry
        report.input = {"fixtures": sorted(listing)}
        report.certificates["examples"] = listing
        return report
