"""Exception types shared across the package."""


class PolychromError(Exception):
    """Base class for all package errors."""


class PreconditionError(PolychromError, ValueError):
    """Raised when an operation is called outside its valid parameter range."""


class ScopeError(PolychromError, ValueError):
    """Raised when an input coloring lacks the structure an operation needs."""


class NoSimplyOrderedOptimum(PreconditionError):
    """Raised for parameters where no optimal simply-ordered coloring exists."""


class BudgetExceeded(PolychromError, RuntimeError):
    """Raised when an exact search would exceed its configured size budget."""


class ParseError(PolychromError, ValueError):
    """Raised when a coloring or subgraph file is malformed."""
