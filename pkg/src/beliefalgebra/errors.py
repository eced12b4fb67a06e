"""Exception types shared across the package."""

from __future__ import annotations


class BeliefAlgebraError(Exception):
    """Base class for every error this package raises on purpose."""


class UniverseMismatchError(BeliefAlgebraError):
    """Objects built over different world universes were combined."""


class CapExceededError(BeliefAlgebraError):
    """A requested universe is larger than the configured cap allows."""


class FormulaSyntaxError(BeliefAlgebraError):
    """Formula text that does not parse; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownAtomError(BeliefAlgebraError):
    """A formula mentions an atom the vocabulary does not declare."""

    def __init__(self, atom: str):
        super().__init__(f"unknown atom {atom!r}")
        self.atom = atom


class ConflictError(BeliefAlgebraError):
    """Closing a generator set derived an inconsistency.

    ``witness`` is the offending pair: either one whose reverse was also
    derived, or one whose left side came out empty.
    """

    def __init__(self, message: str, witness):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


class InvalidAlgebraError(BeliefAlgebraError):
    """A relation that was expected to satisfy the axioms does not."""


class NotCompleteError(BeliefAlgebraError):
    """An operation that needs a complete belief algebra got a partial one."""


class BackboneMismatchError(BeliefAlgebraError):
    """Join is only defined for algebras sharing one backbone."""


class ContradictionError(BeliefAlgebraError):
    """Evidence with no models cannot be accepted."""


class InternalError(BeliefAlgebraError):
    """A structural guarantee failed; this signals a bug, not bad input."""
