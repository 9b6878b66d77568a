"""Exception types shared across the package."""

from __future__ import annotations


class InstmonadError(Exception):
    """Base class for all package-specific failures."""


class RankDeficient(InstmonadError):
    """A matrix that must have full rank does not."""


class ZeroFunctional(InstmonadError):
    """A linear functional that must be nonzero is zero."""


class NegativeResult(InstmonadError):
    """A dimension count came out negative; inputs violate a precondition."""


class RankDropOnSubspace(InstmonadError):
    """A matrix of forms drops rank at a sampled point of a subspace."""


class DegenerateLine(InstmonadError):
    """Two points meant to span a line are proportional."""


class DependentForms(InstmonadError):
    """Linear forms that must be independent are dependent."""


class NotALine(InstmonadError):
    """An operation defined only for n = 1 was called with n > 1."""


class FieldTooSmall(InstmonadError):
    """The field lacks enough distinct scalars for a construction."""


class RetryLimit(InstmonadError):
    """A randomized search exhausted its retry budget."""


class TimeBudgetExceeded(InstmonadError):
    """A verification run exceeded its wall-clock budget."""
