"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: invalid input (including graph6 parse
failures) exits 2, precondition and size-limit violations exit 3.
"""


class InputError(ValueError):
    """A caller-supplied value is outside the operation's domain."""


class Graph6Error(InputError):
    """A graph6 string could not be decoded; the message names the byte offset."""


class PreconditionError(Exception):
    """An operation's stated precondition does not hold for these arguments."""


class UnsupportedSizeError(Exception):
    """Input exceeds the documented exact-mode size limit of an operation."""


class CheckpointError(Exception):
    """A search checkpoint is missing, malformed, or inconsistent with its inputs."""


class InternalCheckError(AssertionError):
    """A postcondition that should be mathematically guaranteed failed.

    Raised loudly instead of returning garbage: any occurrence is an
    implementation bug or a falsified inequality.
    """
