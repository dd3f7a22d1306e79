"""
Verification Runner

Parses an algebra file, runs the suites registered for a command and writes
the line-oriented report. Exit code 0 when every check passes, 1 when a
check fails, 2 on input errors (unreadable or malformed file, invalid
bounds, a section the command needs is missing).

Usage:
    python run_checks.py all --input fixtures/tri2.alg
    python run_checks.py order --input fixtures/tri2.alg
    python run_checks.py ainf --input fixtures/tri2.alg --max-arity 6 --report out/tri2.txt
    python run_checks.py hochschild --input fixtures/dual.alg --max-cochain 4 --seed 3
    python run_checks.py all --input fixtures/uvw.alg --config checks.json --verbose
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Optional, TextIO, Tuple

from algebra_file import load_algebra_file
from check_config import DEFAULT_BOUNDS_CONFIG, load_check_config
from check_registry import COMMANDS, CheckContext, get_registry
from core.errors import AlgebraFileError
from report import Report, emit_report, format_params, summary_frame
import register_checks  # noqa: F401  Import to trigger suite registration

logger = logging.getLogger(__name__)


@dataclass
class RunConfig:
    """
    One invocation of the runner.

    Attributes:
        command: One of COMMANDS
        input_path: Algebra definition file
        max_arity: Largest arity for the A∞ suites
        max_word: Word-length truncation L for the bar suite
        max_cochain: Largest cochain degree for the Hochschild suite
        seed: Seed for every random choice
        report_path: Report file (stdout when None)
        config_path: Optional JSON file merged over the default check config
        verbose: Enable debug logging
    """
    command: str
    input_path: str
    max_arity: int = DEFAULT_BOUNDS_CONFIG['max_arity']
    max_word: int = DEFAULT_BOUNDS_CONFIG['max_word']
    max_cochain: int = DEFAULT_BOUNDS_CONFIG['max_cochain']
    seed: int = DEFAULT_BOUNDS_CONFIG['seed']
    report_path: Optional[str] = None
    config_path: Optional[str] = None
    verbose: bool = False

    def validate(self):
        """
        Raises:
            ValueError: If the command is unknown or a bound is not positive
        """
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command '{self.command}' (expected one of {', '.join(COMMANDS)})")
        for name in ('max_arity', 'max_word', 'max_cochain'):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")

    def bounds(self) -> dict:
        return {
            'max_arity': self.max_arity,
            'max_word': self.max_word,
            'max_cochain': self.max_cochain,
            'seed': self.seed,
        }


def run(config: RunConfig, out: Optional[TextIO] = None) -> Tuple[Report, int]:
    """
    Run every suite of ``config.command`` against the input file.

    Args:
        config: Run configuration
        out: Stream for human progress lines (silent when None)

    Returns:
        Tuple of (report, exit code)
    """
    def say(text: str = ''):
        if out is not None:
            print(text, file=out)

    report = Report(config.command, config.input_path, config.seed)

    try:
        config.validate()
        settings = load_check_config({'bounds': config.bounds()}, config.config_path)
        algebra = load_algebra_file(config.input_path)
    except AlgebraFileError as e:
        report.error = f"{config.input_path}: {e}"
        return report, report.exit_code
    except (ValueError, OSError) as e:
        report.error = str(e)
        return report, report.exit_code

    ctx = CheckContext(algebra, report, settings['bounds'], settings)
    suites = get_registry().for_command(config.command)

    # Explicit commands must have what their suites need; `all` skips instead.
    if config.command != 'all':
        for suite in suites:
            absent = ctx.missing(suite.requires)
            if absent:
                report.error = f"command '{config.command}' needs {', '.join(absent)} for {algebra.name}"
                return report, report.exit_code

    say(f"Algebra: {algebra.name} (dim {algebra.dim})")
    say(f"Sections: delta={'yes' if ctx.has_delta else 'no'}, pairing={'yes' if ctx.has_pairing else 'no'}")
    say(f"Suites to run: {len(suites)}")
    say()

    for suite in suites:
        absent = ctx.missing(suite.requires)
        if absent:
            report.record(f"skipped_{suite.id}", f"needs {','.join(absent)}")
            say(f"[{suite.category.upper()}] {suite.name} ({suite.id}): skipped, needs {', '.join(absent)}")
            continue

        say(f"[{suite.category.upper()}] {suite.name} ({suite.id})")
        start = len(report.checks)
        suite.function(ctx)
        for check in report.checks[start:]:
            marker = '[OK]' if check.passed else f"[FAILED] {check.detail}"
            say(f"  {check.name} {format_params(check.params)}... {marker}")

        if suite.id == 'validate' and not all(c.passed for c in report.checks[start:]):
            report.record('stopped', 'algebra failed validation')
            say("  Algebra failed validation; remaining suites not run")
            break

    return report, report.exit_code


def main():
    parser = argparse.ArgumentParser(
        description='Run the A-infinity verification suites on an algebra file'
    )
    parser.add_argument(
        'command',
        choices=COMMANDS,
        help='Suite selection (all = every suite the file supports)'
    )
    parser.add_argument(
        '--input',
        required=True,
        help='Algebra definition file (e.g., fixtures/tri2.alg)'
    )
    parser.add_argument('--max-arity', type=int, default=DEFAULT_BOUNDS_CONFIG['max_arity'],
                        help='Largest arity for Stasheff and order checks')
    parser.add_argument('--max-word', type=int, default=DEFAULT_BOUNDS_CONFIG['max_word'],
                        help='Word-length truncation for the bar construction')
    parser.add_argument('--max-cochain', type=int, default=DEFAULT_BOUNDS_CONFIG['max_cochain'],
                        help='Largest Hochschild cochain degree')
    parser.add_argument('--seed', type=int, default=DEFAULT_BOUNDS_CONFIG['seed'],
                        help='Seed for random instances and sampled sweeps')
    parser.add_argument('--report', help='Write the report here instead of stdout')
    parser.add_argument('--config', help='JSON file merged over the default check config')
    parser.add_argument('-v', '--verbose', action='store_true', help='Enable debug logging')

    args = parser.parse_args()

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG)

    config = RunConfig(
        command=args.command,
        input_path=args.input,
        max_arity=args.max_arity,
        max_word=args.max_word,
        max_cochain=args.max_cochain,
        seed=args.seed,
        report_path=args.report,
        config_path=args.config,
        verbose=args.verbose,
    )

    # The report owns stdout unless it goes to a file.
    out = sys.stdout if args.report else sys.stderr

    try:
        print("=" * 70, file=out)
        print(f"RUNNING CHECKS: {config.command} on {config.input_path}", file=out)
        print("=" * 70, file=out)
        print(f"Max Arity: {config.max_arity}  Max Word: {config.max_word}  "
              f"Max Cochain: {config.max_cochain}  Seed: {config.seed}", file=out)

        report, code = run(config, out)
        emit_report(report, config.report_path)

        print(file=out)
        print("=" * 70, file=out)
        print("CHECK SUMMARY", file=out)
        print("=" * 70, file=out)
        if report.error is not None:
            print(f"Error: {report.error}", file=out)
        else:
            for key, value in sorted(report.ledger.items()):
                print(f"{key.replace('_', ' ')} = {value}", file=out)
            print(file=out)
            print(summary_frame(report).to_string(index=False), file=out)
            print(file=out)
            print(f"Passed: {sum(c.passed for c in report.checks)}", file=out)
            print(f"Failed: {len(report.failures())}", file=out)
            print(f"Total:  {len(report.checks)}", file=out)
        if config.report_path:
            print(f"Report: {config.report_path}", file=out)

        return code

    except Exception as e:
        print(f"\nError: {e}", file=out)
        import traceback
        traceback.print_exc()
        return 2


if __name__ == '__main__':
    exit(main())
