"""Exception types shared across the package."""


class GausscongError(Exception):
    """Base class for all package errors."""


class DenominatorDivisibleByP(GausscongError):
    """A rational with p in its denominator cannot be reduced mod a power of p."""


class ModulusMismatch(GausscongError):
    """Arithmetic between residues with different moduli is not allowed."""


class CapExceeded(GausscongError):
    """An index or table size exceeded its configured cap."""


class BudgetExceeded(GausscongError):
    """A search box exceeded the candidate-tuple budget."""


class InternalMismatch(GausscongError):
    """Two independent computation routes disagreed; indicates a bug."""


class NoClosedForm(GausscongError):
    """The sequence spec is a bare recurrence without a binomial-sum formula."""


class DegenerateArgs(GausscongError):
    """Arguments make the statement under test vacuous or undefined."""
