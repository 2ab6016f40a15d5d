"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ParseError -> 2, GuardError and
PreconditionError -> 3.
"""

from __future__ import annotations


class CardMinSatError(Exception):
    """Base class for all package errors."""


class ParseError(CardMinSatError):
    """Malformed input file (relation / formula / abduction format)."""


class GuardError(CardMinSatError):
    """A size guard was exceeded (enumeration, closure, arity, ...)."""


class PreconditionError(CardMinSatError):
    """An operation was called outside its declared fragment."""


class NoSolutionError(CardMinSatError):
    """An abduction instance admits no solution at all."""
