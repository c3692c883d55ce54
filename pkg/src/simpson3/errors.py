"""Exception hierarchy shared across the package."""


class Simpson3Error(Exception):
    """Base class for all package-specific errors."""


class DomainError(Simpson3Error):
    """Input violates a precondition (bad entries, unknown ids, malformed files)."""


class DegenerateTable(Simpson3Error):
    """The table (or height vector) lies on a boundary: some relevant sign vanishes
    or falls inside the float tolerance, so no unique triangulation is induced."""


class CatalogError(Simpson3Error):
    """Internal consistency failure while building or using the triangulation
    catalog.  Raised when an invariant that must hold by construction fails,
    which indicates a bug rather than bad input."""
