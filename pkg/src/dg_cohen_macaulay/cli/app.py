"""
Command-line interface of the DG Cohen-Macaulay analyzer.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from src.dg_cohen_macaulay.cli.fixture_loader import FixtureLoader
from src.dg_cohen_macaulay.cli.report_renderer import ReportRenderer
from src.dg_cohen_macaulay.errors import DGCMError, IncompleteSearchError
from src.dg_cohen_macaulay.models.problem import OUTPUT_FORMATS, AnalysisOptions, Report
from src.dg_cohen_macaulay.models.verdicts import Verdict
from src.dg_cohen_macaulay.services.report_service import COMMANDS, ReportService
from src.dg_cohen_macaulay.utils import split_generator_list

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ASSERTION = 2

FAILING_VERDICTS = (Verdict.NOT_CM.value, Verdict.UNKNOWN.value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgcm",
        description="Cohen-Macaulay analysis of commutative DG-rings over graded polynomial quotients",
    )
    parser.add_argument("command", choices=COMMANDS, help="Analysis to run")
    parser.add_argument("problem", nargs="?", help="Problem file path or bundled fixture name")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, dest="output_format",
                        help="Report format (default: text)")
    parser.add_argument("--assert", action="store_true", dest="assert_verdict",
                        help="Exit with code 2 on a NOT_CM or UNKNOWN verdict")
    parser.add_argument("--field-char", type=int, help="Prime characteristic of the field")
    parser.add_argument("--seed", type=int, help="Seed of the regular-sequence search")
    parser.add_argument("--max-tries", type=int, help="Candidates tried per regular-sequence step")
    parser.add_argument("--t-max", type=int, help="Stage of the Koszul colimit oracle")
    parser.add_argument("--prime", action="append", default=[],
                        help="Comma-separated generators of a prime; repeatable")
    parser.add_argument("--sop", action="store_true",
                        help="regseq: require a system of parameters")
    parser.add_argument("--check", action="store_true",
                        help="examples: recompute every expected fragment")
    return parser


class CommandLineApp:
    """Wires argument parsing, problem loading, the report service and rendering."""

    def __init__(self, reports: Optional[ReportService] = None,
                 loader: Optional[FixtureLoader] = None,
                 renderer: Optional[ReportRenderer] = None):
        self.reports = reports or ReportService()
        self.loader = loader or FixtureLoader()
        self.renderer = renderer or ReportRenderer()
        self.problems = self.reports.problems

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        Run the command line and return the process exit code.

        Args:
            argv: Arguments without the program name; ``sys.argv[1:]`` by default.
        """
        args = build_parser().parse_args(argv)
        try:
            options = AnalysisOptions.from_env().with_overrides(output_format=args.output_format)
            report = self._execute(args, options)
        except IncompleteSearchError as exc:
            logger.error("Regular-sequence search incomplete: %s", exc)
            print(f"error: {exc}", file=sys.stderr)
            if exc.certificate is not None:
                print(json.dumps(exc.certificate.to_dict(), indent=2, sort_keys=True),
                      file=sys.stderr)
            return EXIT_ERROR
        except (DGCMError, ValueError, OSError) as exc:
            logger.error("Command %s failed: %s", args.command, exc)
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR

        if options.output_format == "json":
            print(report.to_json())
        else:
            print(self.renderer.render(report))
        return self._exit_code(args, report)

    def _execute(self, args: argparse.Namespace, options: AnalysisOptions) -> Report:
        overrides = {"seed": args.seed, "max_tries": args.max_tries, "t_max": args.t_max}
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if args.command == "examples":
            fixtures = []
            for name in self.loader.list_fixtures():
                source, text = self.loader.resolve(name)
                fixtures.append((name, self.problems.parse_problem(
                    text, source, args.field_char, options.field_char)))
            return self.reports.run_command("examples", None, options.with_overrides(**overrides),
                                            fixtures=fixtures, check=args.check)
        if not args.problem:
            raise ValueError(f"Command {args.command} needs a problem file or fixture name")
        source, text = self.loader.resolve(args.problem)
        problem = self.problems.parse_problem(text, source, args.field_char, options.field_char)
        primes = [split_generator_list(p) for p in args.prime]
        return self.reports.run_command(args.command, problem, options, primes=primes,
                                        want_sop=args.sop, overrides=overrides)

    @staticmethod
    def _exit_code(args: argparse.Namespace, report: Report) -> int:
        if args.command == "examples" and args.check:
            listing = report.certificates.get("examples", {})
            if any(not entry.get("passed", True) for entry in listing.values()):
                return EXIT_ERROR
        if args.assert_verdict and any(v in FAILING_VERDICTS for v in report.verdict_values()):
            return EXIT_ASSERTION
        return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    return CommandLineApp().run(argv)
