"""Exception hierarchy for the twistcat package.

``TwistcatError`` is the common base. ``ParseError`` marks malformed input
documents (CLI exit code 2); every other domain error derives from
``ValidationError`` (CLI exit code 1).
"""
from __future__ import annotations


class TwistcatError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TwistcatError):
    """A configuration document is malformed or references unknown entities."""


class ValidationError(TwistcatError):
    """A mathematical validity check failed."""


class DivisionByZero(ValidationError):
    """Division by the zero scalar."""


class NotAssociative(ValidationError):
    """A multiplication table is not associative."""


class NoIdentity(ValidationError):
    """A multiplication table has no two-sided identity."""


class NoInverse(ValidationError):
    """Some element of a multiplication table has no two-sided inverse."""


class EnumerationBoundExceeded(ValidationError):
    """An enumeration (subgroups, isomorphisms) exceeded its size bound."""


class DegreeMismatch(ValidationError):
    """Cochain operands have incompatible degree, group, or carrier."""


class NotNormalizable(ValidationError):
    """No coboundary correction makes the cochain normalized."""


class CarrierNotCosetSpace(ValidationError):
    """The carrier is not a transitive G-set with a designated base point."""


class NotNormalized(ValidationError):
    """A cochain that must be normalized is not."""


class NotCocycle(ValidationError):
    """A cochain that must be a cocycle is not."""


class NotSpherical(ValidationError):
    """The pivotal structure is not spherical (kappa takes values beyond ±1)."""


class UndefinedLabels(ValidationError):
    """6j-symbol labels violate the kind's composition constraints."""


class NotTransitive(ValidationError):
    """The carrier G-set is not transitive."""


class NotCyclic(ValidationError):
    """The group is not cyclic."""


class ShapeMismatch(ValidationError):
    """Matrix or table shapes are inconsistent with the multiplicity data."""


class SourceTargetMismatch(ValidationError):
    """Functors do not share the required source/target categories."""


class NotEquivariant(ValidationError):
    """A map between G-sets does not commute with the action."""


class LambdaConditionFailed(ValidationError):
    """The 1-cochain fails the coherence condition for equivariant functors."""


class NoTrace(ValidationError):
    """The (bi)module category admits no module trace."""


class IndexOutOfRange(ValidationError):
    """A multiplicity index is outside the valid range."""
