"""Exception types raised by fptkit."""


class FptError(ValueError):
    """Base class for domain errors (bad input, violated preconditions)."""


class ParseError(FptError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class BoundExceeded(FptError):
    pass


class NotAnSUnit(FptError):
    pass


class NotAUnitAt(FptError):
    def __init__(self, place):
        super().__init__(f"element is not a unit at {place}")
        self.place = place


class NotDClosed(FptError):
    """The ideal is not stable under D^(i) for some 1 <= i < p^m."""

    def __init__(self, certificate):
        super().__init__(
            f"ideal is not closed under the iterative derivation "
            f"({len(certificate.witnesses)} witness(es))"
        )
        self.certificate = certificate
