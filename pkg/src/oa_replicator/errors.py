"""Exception hierarchy.

Every exception carries the process exit code the command line front end
maps it to: 1 for domain violations, 2 for malformed input, 3 for numerical
failures.
"""


class OAReplicatorError(Exception):
    exit_code = 1


class DomainError(OAReplicatorError, ValueError):
    """Inputs are well formed but violate a mathematical precondition."""

    exit_code = 1


class InvalidParametersError(DomainError):
    def __init__(self, report):
        self.report = report
        names = ", ".join(report.violations)
        super().__init__(f"invalid open-access parameters, violated: {names}")


class DegenerateGameError(DomainError):
    """The game has no unique interior equilibrium (a denominator vanishes)."""


class NonPositiveConstantsError(DomainError):
    pass


class LevelAboveMaximumError(DomainError):
    pass


class NumericalError(OAReplicatorError, ArithmeticError):
    exit_code = 3


class StepFailureError(NumericalError):
    """An integration step left the open unit square or produced non-finite values."""


class NonConvergenceError(NumericalError):
    pass


class NonBracketingError(NumericalError):
    pass


class ConfigError(OAReplicatorError):
    exit_code = 2
