"""
Exception hierarchy for the DG Cohen-Macaulay analyzer.
"""
from typing import Any, Optional


class DGCMError(Exception):
    """Base class for every error raised by the analyzer."""


class StructuralError(DGCMError, ValueError):
    """Objects do not fit together (mixed rings, bad matrix shapes, d∘d ≠ 0)."""


class UnsupportedInputError(DGCMError, ValueError):
    """Input is well formed but outside what the kernel decides (e.g. inhomogeneous data)."""


class DegenerateInputError(DGCMError, ValueError):
    """Input collapses a construction, such as a zero module in a trivial extension."""


class PreconditionError(DGCMError, ValueError):
    """An operation was called on an object that does not satisfy its precondition."""


class NotInSpectrumError(DGCMError, ValueError):
    """A prime does not contain the H⁰ ideal of the model."""


class KernelConsistencyError(DGCMError):
    """Two routes that must agree produced different answers."""


class IncompleteSearchError(DGCMError):
    """The regular-sequence search ran out of candidates before reaching its target."""

    def __init__(self, message: str, certificate: Any = None):
        super().__init__(message)
        self.certificate = certificate


class ProblemParseError(DGCMError, ValueError):
    """A problem file could not be parsed.

    Args:
        message: Human readable diagnostic.
        line: 1-based line of the offending token, when known.
        column: 1-based column of the offending token, when known.
        path: JSON path of the offending field, e.g. ``construction.module.ideal[0]``.
    """

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None, path: Optional[str] = None):
        self.line = line
        self.column = column
        self.path = path
        super().__init__(self._format(message))
        self.message = message

    def _format(self, message: str) -> str:
        where = []
        if self.path:
            where.append(self.path)
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        if where:
            return f"{message} ({', '.join(where)})"
        return message


class PolynomialSyntaxError(ProblemParseError):
    """A polynomial string does not follow the polynomial grammar."""

    def __init__(self, message: str, text: str = "", position: Optional[int] = None,
                 path: Optional[str] = None):
        self.text = text
        self.position = position
        column = None if position is None else position + 1
        super().__init__(message, column=column, path=path)
