"""Exact arithmetic in F_p(t): iterative derivations, p^m-rational ideals,
S-unit quotients and valuation profiles.

Everything is computed exactly over F_p for primes p <= 251; there is no
floating point anywhere.
"""

from .errors import BoundExceeded, FptError, NotAnSUnit, NotAUnitAt, NotDClosed, ParseError
from .fields import *  # noqa: F401,F403
from .places import *  # noqa: F401,F403
from .derivation import *  # noqa: F401,F403
from .ideals import *  # noqa: F401,F403
from .units import *  # noqa: F401,F403
from .reports import *  # noqa: F401,F403
from . import derivation, fields, ideals, places, reports, units

__version__ = "0.1.0"

__all__ = (
    ["FptError", "ParseError", "BoundExceeded", "NotAnSUnit", "NotAUnitAt", "NotDClosed"]
    + fields.__all__
    + places.__all__
    + derivation.__all__
    + ideals.__all__
    + units.__all__
    + reports.__all__
)
