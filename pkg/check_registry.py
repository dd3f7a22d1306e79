"""
Suite Registry for the verification runner.

Every verification suite is registered once, with the commands that run it
and the optional file sections it needs. The runner and the discovery tool
both read this registry.

Key Features:
- Suite discovery and listing by category
- Requirement tracking (delta, pairing, square-zero Δ)
- Per-run context shared by the suites of one command
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from core.algebra import GradedAlgebra
from core.errors import AlgebraError
from core.graded import LinearOperator, compose
from report import Report

logger = logging.getLogger(__name__)

COMMANDS = ('validate', 'ainf', 'order', 'compat', 'cohomology', 'bar', 'hochschild', 'all')

# Sections a suite may need from the algebra file.
REQUIRES_DELTA = 'delta'
REQUIRES_PAIRING = 'pairing'
REQUIRES_SQUARE_ZERO = 'square_zero'


@dataclass
class CheckContext:
    """
    State shared by the suites of one run.

    Attributes:
        algebra: Parsed algebra
        report: Report the suites append to
        bounds: Resolved arity/word/cochain bounds and seed
        settings: Full check configuration (bounds, random, hochschild)
    """
    algebra: GradedAlgebra
    report: Report
    bounds: Dict[str, Any]
    settings: Dict[str, Any]
    _square_zero: Optional[bool] = field(default=None, init=False, repr=False)

    @property
    def seed(self) -> int:
        return self.bounds['seed']

    @property
    def has_delta(self) -> bool:
        return self.algebra.delta is not None

    @property
    def has_pairing(self) -> bool:
        return self.algebra.pairing is not None

    @property
    def delta(self) -> LinearOperator:
        """The file's Δ, or the zero operator when none is given."""
        if self.algebra.delta is not None:
            return self.algebra.delta
        return LinearOperator.zero(self.algebra.basis, 1)

    @property
    def square_zero(self) -> bool:
        if self._square_zero is None:
            self._square_zero = compose(self.delta, self.delta).is_zero()
        return self._square_zero

    def missing(self, requires: List[str]) -> List[str]:
        """Requirements this input does not meet."""
        absent = []
        for need in requires:
            if need == REQUIRES_DELTA and not self.has_delta:
                absent.append(need)
            elif need == REQUIRES_PAIRING and not self.has_pairing:
                absent.append(need)
            elif need == REQUIRES_SQUARE_ZERO and not self.square_zero:
                absent.append(need)
        return absent

    def attempt(self, suite: str, name: str, params: Dict[str, Any], check: Callable[[], Any]) -> Optional[Any]:
        """
        Run ``check`` and record an algebraic failure as a FAIL line.

        ``check`` records its own result(s) and returns a value for later
        checks; an AlgebraError becomes one FAIL line carrying its message.
        """
        try:
            return check()
        except AlgebraError as e:
            logger.debug("%s/%s raised %s", suite, name, type(e).__name__)
            self.report.add(name, params, False, str(e), suite)
            return None


@dataclass
class SuiteDefinition:
    """
    Definition of a verification suite.

    Attributes:
        id: Unique suite identifier (e.g., 'ainf', 'hochschild')
        name: Human-readable name
        category: Module the suite exercises ('core', 'borjeson', 'bar', 'hochschild', 'random')
        description: Brief description of what the suite verifies
        function: Callable taking a CheckContext and appending checks to its report
        commands: Commands that run this suite
        requires: Needed sections; an explicit command fails with exit 2 when
            one is missing, ``all`` silently skips the suite
        checks: Names of the checks the suite can emit
        version: Suite version
    """
    id: str
    name: str
    category: str
    description: str
    function: Callable[[CheckContext], None]
    commands: List[str] = field(default_factory=list)
    requires: List[str] = field(default_factory=list)
    checks: List[str] = field(default_factory=list)
    version: str = "1.0.0"


class SuiteRegistry:
    """
    Central registry for all verification suites.

    Suites are registered once during module initialization and queried by
    command for a run, or listed for discovery.
    """

    def __init__(self):
        self._suites: Dict[str, SuiteDefinition] = {}

    def register(self, suite: SuiteDefinition):
        """
        Register a suite in the registry.

        Raises:
            ValueError: If the suite ID is already registered or names an unknown command
        """
        if suite.id in self._suites:
            raise ValueError(f"Suite '{suite.id}' already registered")
        unknown = [c for c in suite.commands if c not in COMMANDS]
        if unknown:
            raise ValueError(f"Suite '{suite.id}' names unknown command(s): {', '.join(unknown)}")

        self._suites[suite.id] = suite

    def get(self, suite_id: str) -> Optional[SuiteDefinition]:
        """Get a suite by ID."""
        return self._suites.get(suite_id)

    def list_all(self) -> List[SuiteDefinition]:
        """List all registered suites in registration order."""
        return list(self._suites.values())

    def list_by_category(self, category: str) -> List[SuiteDefinition]:
        return [s for s in self._suites.values() if s.category == category]

    def for_command(self, command: str) -> List[SuiteDefinition]:
        """Suites run by a command, in registration order."""
        return [s for s in self._suites.values() if command in s.commands]


# Global registry instance
_registry = SuiteRegistry()


def get_registry() -> SuiteRegistry:
    """Get the global suite registry instance."""
    return _registry


def register_suite(
    id: str,
    name: str,
    category: str,
    description: str,
    function: Callable[[CheckContext], None],
    **kwargs
) -> SuiteDefinition:
    """
    Convenience function to register a suite.

    Example:
        >>> register_suite(
        ...     id='order',
        ...     name='Associative Order',
        ...     category='borjeson',
        ...     description='Least n with m_{n+1} = 0',
        ...     function=run_order_suite,
        ...     commands=['order', 'all'],
        ...     requires=['delta', 'square_zero'],
        ... )
    """
    suite = SuiteDefinition(
        id=id,
        name=name,
        category=category,
        description=description,
        function=function,
        **kwargs
    )
    _registry.register(suite)
    return suite
