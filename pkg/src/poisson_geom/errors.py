"""Exception hierarchy.

Usage errors (wrong kinds, bad arguments) derive from ``UsageError``;
geometric degeneracies derive from ``DegenerateGeometryError`` so the CLI
can map them to a dedicated exit code.
"""


class PoissonGeomError(Exception):
    pass


class UsageError(PoissonGeomError, ValueError):
    pass


class KindMismatchError(UsageError):
    pass


class ChartSingularityError(UsageError):
    """Coordinate outside the chart or at a chart singularity."""


class DegenerateGeometryError(PoissonGeomError):
    pass


class ConeVectorError(DegenerateGeometryError):
    """A vector on the light cone has no point on the hyperboloids."""


class DegenerateInputError(DegenerateGeometryError):
    pass


class NoIntersectionError(DegenerateGeometryError):
    pass


class ImproperTriangleError(DegenerateGeometryError):
    pass


class DegenerateConicError(DegenerateGeometryError):
    pass


class EmptyConicError(DegenerateGeometryError):
    pass


class AtInfinityError(DegenerateGeometryError):
    pass


class AtPoleError(DegenerateGeometryError):
    pass
