"""Exception types shared across the package."""

from __future__ import annotations


class GroupLabError(Exception):
    """Base class for every error raised by this package."""


class CayleyError(GroupLabError):
    """A multiplication table failed one of the group axioms.

    Attributes:
        axiom: which check failed ("shape", "latin", "identity", "inverse",
            "associativity" or "closure").
        witness: indices pinpointing the first violation found, or None.
    """

    def __init__(self, axiom: str, witness, message: str):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class SizeCapError(GroupLabError):
    """A construction or search exceeded its configured size cap."""


class SubgroupError(GroupLabError):
    """A set of elements is not the subgroup the operation required."""


class NormalityError(SubgroupError):
    """Subgroup is not normal; `witness` holds (element, conjugator)."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ParameterError(GroupLabError):
    """Invalid constructor parameters or group-spec text."""


class SpecSyntaxError(ParameterError):
    """Unparseable group-spec text; `position` is the offending offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ActionError(ParameterError):
    """A semidirect-product action descriptor failed validation."""


class AmalgamationError(ParameterError):
    """A central-product factor lacks a unique central involution."""


class DomainError(GroupLabError):
    """Operation applied outside its mathematical domain."""


class SigmaBudgetError(GroupLabError):
    """Exact minimal-cover search ran out of budget.

    Attributes:
        lower: best lower bound proven before the deadline.
        upper: size of the best cover found so far (may be None).
    """

    def __init__(self, message: str, lower: int, upper):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class CatalogError(GroupLabError):
    """Catalog data is malformed or failed its integrity checks."""
