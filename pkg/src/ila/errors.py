"""Exception hierarchy.

Every error raised on purpose by the library derives from ``IlaError`` so the
CLI can map it to a domain-error exit status.
"""


class IlaError(Exception):
    """Base class for domain errors."""


class IndexMismatch(IlaError):
    pass


class NullSubexpression(IlaError):
    pass


class BadRename(IlaError):
    pass


class BadPartition(IlaError):
    pass


class NotGenop(IlaError):
    pass


class BadSeed(IlaError):
    pass


class BadCap(IlaError):
    pass


class NotInvariant(IlaError):
    pass


class NotReachableByFeedback(IlaError):
    pass


class NotReachableByInjection(IlaError):
    pass


class NothingToPlace(IlaError):
    pass


class DegreeMismatch(IlaError):
    pass


class UnplaceableFactor(IlaError):
    def __init__(self, msg, factor=None):
        super().__init__(msg)
        self.factor = factor


class UnknownEdge(IlaError):
    pass


class NotAForest(IlaError):
    pass


class NotLinked(IlaError):
    pass


class TransferConditionsFail(IlaError):
    pass


class IllPosedNetwork(IlaError):
    pass


class SingularStatic(IlaError):
    pass


class ParseError(IlaError):
    def __init__(self, msg, line=0, column=0):
        super().__init__(f"{line}:{column}: {msg}")
        self.line = line
        self.column = column


class DuplicateDevice(IlaError):
    pass
