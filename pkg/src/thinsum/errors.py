"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

from typing import Any


class ThinsumError(Exception):
    """Base class for all errors raised by this package."""


class SpecMismatch(ThinsumError, ValueError):
    """Two values, vectors or matrices live over different fields or coordinate sets."""


class DivisionByZero(ThinsumError, ZeroDivisionError):
    pass


class ParameterError(ThinsumError, ValueError):
    pass


class NotASubset(ThinsumError, ValueError):
    pass


class NotAnElement(ThinsumError, ValueError):
    pass


class RankTooLarge(ThinsumError, ValueError):
    pass


class SeedDependent(ThinsumError, ValueError):
    pass


class GroundTooLarge(ThinsumError, ValueError):
    pass


class NotIndependent(ThinsumError, ValueError):
    pass


class NotABase(ThinsumError, ValueError):
    """Raised when an argument that must be a base is not one.

    ``which`` names the offending argument (e.g. ``"b0"``).
    """

    def __init__(self, which: str, subset: Any = None):
        self.which = which
        self.subset = subset
        msg = f"{which} is not a base"
        if subset is not None:
            msg += f": {sorted(map(str, subset))}"
        super().__init__(msg)


class InternalContractViolation(ThinsumError, RuntimeError):
    """A guaranteed postcondition failed; only an inconsistent oracle can cause this.

    ``context`` carries whatever helps diagnosis (typically the exchange graph).
    """

    def __init__(self, message: str, context: Any = None):
        self.context = context
        super().__init__(message)


class FormatError(ThinsumError, ValueError):
    """Malformed input file; the message starts with a line/column or JSON-path location."""
