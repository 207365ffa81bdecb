"""Exception hierarchy for the parkroute package.

Everything raised on purpose derives from ParkrouteError so callers (and the
CLI) can catch one type for "your input or data is bad" and let genuine bugs
propagate.
"""


class ParkrouteError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ParkrouteError):
    """A file could not be read or does not follow the expected schema."""


class ValidationError(ParkrouteError):
    """Structurally well-formed data violates a model invariant."""


class UnknownNode(ValidationError):
    """A node id was used that does not exist in the network."""


class NotAParkingLot(ValidationError):
    """Availability was requested for a node that is not a parking lot."""


class InvalidRoute(ValidationError):
    """A node sequence is not a valid start-to-lot route in the network."""


class NoRouteFound(ParkrouteError):
    """Random route construction kept dead-ending; the network is too sparse."""


class EmptySurvey(ParkrouteError):
    """An estimator needs at least one observed response and got none."""


class InvalidConcentration(ParkrouteError):
    """A Dirichlet concentration vector has a non-positive or misshapen entry."""


class DegenerateBounds(ParkrouteError):
    """A normalization interval has zero width, so (x - a) / (b - a) is undefined."""


class EmptyNetwork(ValidationError):
    """An operation needs at least one edge and the network has none."""


class LimitExceeded(ParkrouteError):
    """Exhaustive enumeration hit its route-count or path-length cap."""
