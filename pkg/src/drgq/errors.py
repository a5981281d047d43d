"""Exception types shared across the package.

The CLI maps these onto exit codes: precondition problems exit 2,
numerical breakdowns exit 4, and a failed mathematical assertion
(an instance of a claimed identity not holding) exits 5.
"""


class DisconnectedGraphError(ValueError):
    """Raised when an operation requires a connected graph."""

    def __init__(self, u: int, v: int):
        self.u = u
        self.v = v
        super().__init__(f"graph is disconnected: vertices {u} and {v} are mutually unreachable")


class NumericalError(RuntimeError):
    """A floating-point computation failed its residual self-check."""


class MathAssertionError(RuntimeError):
    """A mathematical identity that must hold on the input failed.

    This is the alarm-bell path: it means a certified claim was violated
    on a concrete instance, not that the tool was misused.
    """
