"""Exception types raised across the package."""

from __future__ import annotations


class CequantError(Exception):
    """Base class for all package errors."""


class DimensionError(CequantError, ValueError):
    """Operands live on T*R^n for different n."""


class UnsupportedDimension(CequantError, ValueError):
    """The requested construction is not defined in this dimension."""


class ArgumentError(CequantError, ValueError):
    """An argument violates an operation's precondition."""


class CodecError(CequantError, ValueError):
    """A JSON payload does not match the expected schema."""


class JetOrderError(CequantError, ValueError):
    """A Taylor jet is too short for the requested computation."""


class CriticalResonance(CequantError, ArithmeticError):
    """The eigenvector recurrence hit a zero divisor with a nonzero right side.

    The weights are such that the operator module is not isomorphic to the
    symbol module along the component ``(k, s)``; the inconsistent step is the
    lower component ``(l, t)``.
    """

    def __init__(self, k: int, s: int, l: int, t: int, delta):
        self.k, self.s, self.l, self.t, self.delta = k, s, l, t, delta
        super().__init__(
            f"critical resonance at delta={delta}: component ({k},{s}) "
            f"cannot be continued through ({l},{t})"
        )

    def witness(self) -> dict:
        return {"k": self.k, "s": self.s, "l": self.l, "t": self.t,
                "delta": str(self.delta)}


class SecondOrderResonance(CequantError, ArithmeticError):
    """The closed second-order formula is undefined at this shift."""
