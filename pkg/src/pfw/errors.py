"""Exception types shared across the package."""


class PfwError(Exception):
    """Base class for all workbench errors."""


class CapExceeded(PfwError):
    """A size cap was hit; the offending quantity and limit are recorded."""

    def __init__(self, what, limit, actual):
        super().__init__(f"{what}: {actual} exceeds cap {limit}")
        self.what = what
        self.limit = limit
        self.actual = actual


class InvalidPoset(PfwError):
    """The relation is not a partial order."""


class NotALattice(PfwError):
    """Tables do not describe a bounded lattice."""


class NotDistributive(PfwError):
    """Distributivity fails; carries a violating triple of element names."""

    def __init__(self, triple):
        super().__init__(f"distributivity fails at triple {triple}")
        self.triple = triple


class PreconditionError(PfwError):
    """An operation's precondition is violated (e.g. a non-complemented image)."""


class SchemaError(PfwError):
    """A JSON document does not match its schema; carries the JSON path."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message
