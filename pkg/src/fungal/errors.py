"""Exception hierarchy shared by every module."""

from __future__ import annotations


class FungalError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 2


class SchemeError(FungalError):
    pass


class EmptyWord(SchemeError):
    pass


class IllegalSymbol(SchemeError):
    def __init__(self, position: int, symbol: str = "?") -> None:
        super().__init__(f"illegal symbol {symbol!r} at position {position}")
        self.position = position
        self.symbol = symbol


class MonotoneWord(SchemeError):
    pass


class NotPrimitive(SchemeError):
    pass


class ParseError(FungalError):
    pass


class GeometryError(FungalError):
    pass


class NotDiagonal(GeometryError):
    pass


class BadSinkIndex(GeometryError):
    pass


class PinClash(GeometryError):
    pass


class BrokenChain(GeometryError):
    pass


class IllegalDiagonalShortcut(GeometryError):
    pass


class FootprintCollision(GeometryError):
    pass


class DelayOutOfRange(GeometryError):
    pass


class PolarityMismatch(GeometryError):
    pass


class OrientationViolation(GeometryError):
    pass


class HorizonTooSmall(FungalError):
    pass


class CircuitError(FungalError):
    pass


class ForwardReference(CircuitError):
    pass


class MultipleOutputs(CircuitError):
    pass


class FanInExceeded(CircuitError):
    pass


class UnknownGateKind(CircuitError):
    pass


class ArityMismatch(CircuitError):
    pass


class DegenerateScheme(CircuitError):
    pass


class CircuitTooLarge(CircuitError):
    pass


class SinkFailure(FungalError):
    pass


class SimultaneousArrival(GeometryError):
    pass


class RoutingError(GeometryError):
    pass
