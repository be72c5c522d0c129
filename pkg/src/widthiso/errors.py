class GraphError(Exception):
    """Base class for every error raised by this package."""


class InvalidVertexError(GraphError):
    pass


class EmptySetError(GraphError):
    pass


class InvalidQueryError(GraphError):
    pass


class InvalidBipartitionError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class RootHasNoParentError(GraphError):
    pass


class InvalidDecompositionError(GraphError):
    pass


class NoAdmissibleMappingError(GraphError):
    pass


class WidthExceededError(GraphError):
    pass


class SizeMismatchError(GraphError):
    pass


class InvalidParamsError(GraphError):
    pass


class FormatError(GraphError):
    pass
