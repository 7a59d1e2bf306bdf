"""Exception types shared across the library."""


class SmashlabError(Exception):
    """Base class for all library errors."""


class InvalidDescriptor(SmashlabError):
    """Group descriptor violates a constructor invariant."""


class TypeMismatch(SmashlabError):
    """Element does not belong to the group it was used with."""


class GroupMismatch(SmashlabError):
    """Operands live over different value groups."""


class UnknownSubgroup(SmashlabError):
    """Convex-subgroup reference does not point into the chain."""


class NotAnIdeal(SmashlabError):
    """Cut contains negative values, so it is not an integral ideal."""


class UnsupportedCutCombination(SmashlabError):
    """Cut operation fell outside the supported constructor class."""


class InvalidFlags(SmashlabError):
    """Idempotency flag list cannot describe a valuation spectrum."""


class InvalidSpectrum(SmashlabError):
    """Spectrum slots violate a structural constraint."""


class InfiniteSpectrum(SmashlabError):
    """Operation requires a finite spectrum but a family slot is present."""


class UnknownPrime(SmashlabError):
    """Prime reference does not point into the spectrum."""


class InvalidChain(SmashlabError):
    """Interval chain failed validation where a valid chain is required."""


class NotFlat(SmashlabError):
    """Chain does not classify a flat epimorphism."""


class NotGroupRealized(SmashlabError):
    """Operation needs a spectrum built from a value group."""


class InvalidModule(SmashlabError):
    """Cut pair does not describe a module (denominator not a submodule)."""


class ParseError(SmashlabError):
    """Text input violates a grammar; carries line/column info."""

    def __init__(self, message, line=None, column=None):
        self.bare_message = message
        self.line = line
        self.column = column
        if line is not None:
            message = "line %d, column %d: %s" % (line, column, message)
        super().__init__(message)


class DenominatorNotUnit(SmashlabError):
    """Denominator has positive valuation, so it is not invertible."""


class NotDivisible(SmashlabError):
    """Exact division impossible: divisor has larger valuation."""


class DivisionByZero(SmashlabError):
    """Division by the zero ring element."""


class DimensionMismatch(SmashlabError):
    """Matrix shapes are incompatible."""


class UnsupportedComponent(SmashlabError):
    """Componentwise value is not legal in the target component ring."""


class SigmaInPrime(SmashlabError):
    """Requested denominator lies in the prime being inverted."""
