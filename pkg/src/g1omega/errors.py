"""Exception hierarchy; the CLI maps each class to a fixed exit code."""


class G1Error(Exception):
    exit_code = 1


class InvalidInputError(G1Error, ValueError):
    """Malformed or out-of-domain input (exit code 2)."""

    exit_code = 2


class DegenerateModelError(G1Error):
    """The input is not a smooth genus one normal curve (exit code 3)."""

    exit_code = 3


class InconsistentInputError(DegenerateModelError):
    """A linear system expected to have solutions has none."""


class InternalAssertionError(G1Error, AssertionError):
    """An identity that must hold for every valid input failed (exit code 4)."""

    exit_code = 4
