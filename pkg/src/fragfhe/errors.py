"""Exception hierarchy for the fragfhe package.

Everything raised on purpose derives from FragFheError so callers can
catch the whole family with one clause.
"""


class FragFheError(Exception):
    """Base class for all fragfhe errors."""


class NotInvertible(FragFheError):
    """gcd(a, m) != 1: the requested modular inverse does not exist."""


class Unsatisfiable(FragFheError):
    """A rejection-sampling constraint can never be met on the given range."""


class InvalidProfile(FragFheError):
    """Parameter setup rejected (bad security level, bad primes, bad bounds)."""


class MessageOutOfRange(FragFheError):
    """Plaintext is >= p and cannot be encrypted losslessly."""


class ModulusMismatch(FragFheError):
    """Ciphertexts combined under different moduli / keys."""


class NotUnit(FragFheError):
    """An element expected to be invertible mod p is congruent to 0."""


class InsufficientSamples(FragFheError):
    """Too few samples for the requested number of chi-square buckets."""


class MissingWitness(FragFheError):
    """Operation needs test-mode witness data that was not retained."""


class ArityMismatch(FragFheError):
    """Circuit evaluated with the wrong set of input assignments."""


class ParseError(FragFheError):
    """Circuit source rejected; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ParseError):
    """Structurally invalid circuit; names the offending wire."""

    def __init__(self, message: str, wire: str, line: int | None = None):
        self.wire = wire
        super().__init__(message, line)


class FileFormatError(FragFheError):
    """A key or ciphertext file is malformed or non-canonical."""
