"""Exception hierarchy shared by every module.

All domain errors derive from :class:`TwistWidthError` so the CLI can map
them to exit code 1 and print the class name.
"""


class TwistWidthError(Exception):
    """Base class for domain errors."""


class OutOfRangeElement(TwistWidthError):
    pass


class GroundSetTooLarge(TwistWidthError):
    pass


class ImproperSystem(TwistWidthError):
    """Raised when an operation needs a nonempty family."""


def _labels(mask: int) -> str:
    return "{" + ",".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


class NotDeltaMatroid(TwistWidthError):
    """The symmetric exchange axiom fails; ``witness`` is (X mask, Y mask, u)."""

    def __init__(self, witness, message=None):
        self.witness = witness
        if message is None:
            x, y, u = witness
            message = f"symmetric exchange fails for X={_labels(x)}, Y={_labels(y)}, u={u}"
        super().__init__(message)


class NotFeasible(TwistWidthError):
    pass


class NoSandwich(TwistWidthError):
    pass


class IllegalScript(TwistWidthError):
    pass


class RepeatedElement(TwistWidthError):
    pass


class TooLarge(TwistWidthError):
    pass


class TooManyEdges(TwistWidthError):
    pass


class InvalidSubset(TwistWidthError):
    pass


class InvalidRibbonGraph(TwistWidthError):
    pass


class Disconnected(TwistWidthError):
    pass


class GenerationExhausted(TwistWidthError):
    pass


class ParseError(TwistWidthError):
    pass
