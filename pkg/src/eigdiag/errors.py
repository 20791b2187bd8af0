"""Exception hierarchy shared by all eigdiag modules."""


class EigdiagError(Exception):
    """Base class for all package errors."""


class DegenerateShape(EigdiagError):
    """Polygon area is numerically zero relative to its bounding box."""


class NotConvex(EigdiagError):
    """Operation requires a strictly convex polygon."""


class NotSimple(EigdiagError):
    """Polygon boundary self-intersects."""


class InvalidParam(EigdiagError):
    """Parameter outside the documented domain."""


class TooCoarse(EigdiagError):
    """Mesh has too few interior nodes for a Dirichlet solve."""


class NoConvergence(EigdiagError):
    """Eigenvalue iteration failed to converge."""


class SpuriousKernel(EigdiagError):
    """No mean-free eigenvector found among the computed Neumann modes."""


class NoMeanZero(EigdiagError):
    """Bisection for the mean-zero test profile could not bracket a root."""


class MismatchedMeshes(EigdiagError):
    """Richardson extrapolation requires nested meshes with h_fine = h_coarse/2."""


class SchemaError(EigdiagError):
    """CSV/JSON file does not match the expected schema."""
