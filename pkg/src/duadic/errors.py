"""Exception hierarchy shared by all modules."""


class DdcError(Exception):
    """Base class for errors raised by this package."""


class UsageError(DdcError, ValueError):
    """Arguments are inconsistent with each other (mismatched fields, wrong q)."""


class DomainError(DdcError, ValueError):
    """A numeric argument lies outside the domain an operation accepts."""


class NotAPartition(DomainError):
    """S1 and S2 do not split {1, ..., n-1} into two equal halves."""


class NoWitness(DomainError):
    """No multiplier maps S1 onto S2."""


class BudgetExceeded(DdcError):
    """Full codeword enumeration would exceed the configured budget."""


class GoldenFormatError(DdcError):
    """A golden table file cannot be parsed."""
