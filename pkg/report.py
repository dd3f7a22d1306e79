"""
Check results and the line-oriented run report.

Report text layout::

    REPORT command=order input=fixtures/tri2.alg seed=0
    CHECK associative_order cap=6 PASS order=2
    CHECK order_monotone cap=6 PASS zero=3,4,5,6,7
    LEDGER mode=cohomological

Check lines keep execution order; ledger lines are sorted by key. Nothing
time- or environment-dependent is written, so equal inputs give
byte-identical reports.
"""

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from core.algebra import ValidationReport


def _clean(text: str) -> str:
    return ' '.join(str(text).split())


def format_params(params: Dict[str, Any]) -> str:
    """``key=value`` joined by commas, in insertion order; ``-`` when empty."""
    if not params:
        return '-'
    return ','.join(f"{k}={_clean(v).replace(' ', '')}" for k, v in params.items())


@dataclass
class CheckResult:
    """
    Outcome of one named check.

    Attributes:
        name: Check name (e.g. 'stasheff', 'hh_dimensions')
        params: Parameters the check ran with
        passed: Whether the check passed
        detail: Witness on failure, short evidence on success (may be empty)
        suite: Suite that produced the check
    """
    name: str
    params: Dict[str, Any]
    passed: bool
    detail: str = ''
    suite: str = ''

    @property
    def status(self) -> str:
        return 'PASS' if self.passed else 'FAIL'

    def to_line(self) -> str:
        line = f"CHECK {self.name} {format_params(self.params)} {self.status}"
        detail = _clean(self.detail)
        return f"{line} {detail}" if detail else line


@dataclass
class Report:
    """
    Every check of one run plus the ledger of pinned conventions.

    Attributes:
        command: Command that produced the report
        input_path: Algebra file as given on the command line
        seed: Seed of every random choice in the run
        checks: Check results in execution order
        ledger: Recorded conventions and diagnostics
        error: Input error that stopped the run, if any
    """
    command: str
    input_path: str
    seed: int
    checks: List[CheckResult] = field(default_factory=list)
    ledger: Dict[str, str] = field(default_factory=dict)
    error: Optional[str] = None

    def add(self, name: str, params: Dict[str, Any], passed: bool, detail: str = '', suite: str = '') -> CheckResult:
        result = CheckResult(name, dict(params), passed, detail, suite)
        self.checks.append(result)
        return result

    def add_validation(self, name: str, params: Dict[str, Any], validation: ValidationReport,
                       suite: str = '', pass_detail: str = '') -> CheckResult:
        """One check from a ValidationReport; the witness is its first violation."""
        if validation.ok:
            detail = pass_detail
        else:
            detail = validation.first().format()
            if len(validation) > 1:
                detail += f" (+{len(validation) - 1} more)"
        self.ledger.update({k: str(v) for k, v in validation.ledger.items()})
        return self.add(name, params, validation.ok, detail, suite)

    def record(self, key: str, value: Any):
        self.ledger[key] = _clean(value)

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return 2
        return 0 if self.passed else 1

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_lines(self) -> List[str]:
        lines = [f"REPORT command={self.command} input={self.input_path} seed={self.seed}"]
        if self.error is not None:
            lines.append(f"ERROR {_clean(self.error)}")
        lines.extend(c.to_line() for c in self.checks)
        lines.extend(f"LEDGER {k}={v}" for k, v in sorted(self.ledger.items()))
        return lines

    def to_text(self) -> str:
        return '\n'.join(self.to_lines()) + '\n'


def emit_report(report: Report, path: Optional[str] = None) -> str:
    """
    Write the report to ``path`` or standard output.

    Returns:
        The report text

    Raises:
        OSError: If the file cannot be written
    """
    text = report.to_text()
    if path is None:
        sys.stdout.write(text)
    else:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding='utf-8')
    return text


def summary_frame(report: Report) -> pd.DataFrame:
    """PASS/FAIL counts per suite, suites in first-appearance order."""
    if not report.checks:
        return pd.DataFrame(columns=['suite', 'checks', 'passed', 'failed'])
    frame = pd.DataFrame(
        [{'suite': c.suite or '-', 'passed': int(c.passed), 'failed': int(not c.passed)} for c in report.checks]
    )
    order = list(dict.fromkeys(frame['suite']))
    summary = frame.groupby('suite', sort=False).agg(
        checks=('passed', 'size'), passed=('passed', 'sum'), failed=('failed', 'sum')
    ).reset_index()
    summary['suite'] = pd.Categorical(summary['suite'], categories=order, ordered=True)
    return summary.sort_values('suite').reset_index(drop=True)
