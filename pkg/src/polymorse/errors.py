"""Exception types raised by polymorse."""


class PolymorseError(Exception):
    """Base class for all library errors."""


class CenterOnBoundary(PolymorseError):
    """The reference point lies on (or too near) the polygon path."""


class NullPolygon(PolymorseError):
    """All edges of the polygon vanish."""


class NullConfiguration(PolymorseError):
    """Perimeter is zero, so the normalized area is undefined."""


class NonSmoothPoint(PolymorseError):
    """The configuration lies on the collision stratum (a vanishing edge)."""


class MultipleCollisions(PolymorseError):
    pass


class ZeroTail(PolymorseError):
    pass


class NoConvergence(PolymorseError):
    pass


class HitNonSmoothStratum(PolymorseError):
    pass


class ClosureSingular(PolymorseError):
    """The equilateral closure Jacobian is (numerically) singular."""


class ZeroConstraintGradient(PolymorseError):
    pass


class ZeroArea(PolymorseError):
    """Dual problem is ill-posed at zero area (e.g. the complete fold)."""
