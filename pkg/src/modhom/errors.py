"""Exception hierarchy shared by all modules."""


class ModhomError(Exception):
    """Base class for every error raised by the package."""


class GraphError(ModhomError):
    """Malformed graph input."""


class DuplicateEdge(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class BipartitionViolation(GraphError):
    pass


class PinConflict(GraphError):
    pass


class MissingBipartition(ModhomError):
    pass


class InstanceTooLarge(ModhomError):
    """The brute-force budget would be exceeded."""


class NotReduced(ModhomError):
    """The target has an automorphism of order p of the relevant flavor."""


class SingularFamily(ModhomError):
    pass


class SolveFailure(ModhomError):
    pass


class BadCounts(ModhomError):
    pass


class NotACycleGadget(ModhomError):
    pass


class VariantMismatch(ModhomError):
    pass


class ConditionFailure(ModhomError):
    pass


class OutOfFragment(ModhomError):
    pass


class NotForbiddenFree(ModhomError):
    pass


class NotTractableForm(ModhomError):
    pass


class AssertionReport(ModhomError):
    """Two quantities that must agree did not."""
