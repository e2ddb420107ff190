"""Exception hierarchy.

Everything raised on purpose derives from :class:`E8OrbitsError`, which the
CLI maps to exit codes: :class:`InputError` subclasses exit with 2,
:class:`UnsupportedError` subclasses with 3, anything else with 1.
"""


class E8OrbitsError(Exception):
    pass


class InputError(E8OrbitsError, ValueError):
    """Malformed or out-of-range input."""


class UnsupportedError(E8OrbitsError):
    """Well-formed input naming a combination the library refuses."""


class MalformedCartan(InputError):
    pass


class NotFiniteType(InputError):
    pass


class UnknownDiagram(E8OrbitsError):
    pass


class InvalidPrime(InputError):
    pass


class InvalidZOrder(InputError):
    pass


class ZeroVector(InputError):
    pass


class NotReduced(InputError):
    pass


class BoundExceeded(InputError):
    pass


class IterationCap(E8OrbitsError):
    pass


class UnsupportedLattice(UnsupportedError):
    pass


class NoFourthRoot(UnsupportedError):
    pass


class TwistedUnavailable(UnsupportedError):
    pass


class CapExceeded(E8OrbitsError):
    pass
