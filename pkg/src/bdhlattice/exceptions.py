"""Exception types raised across the package."""


class BDHError(Exception):
    """Base class for all errors raised by :mod:`bdhlattice`."""


class GraphFormatError(BDHError, ValueError):
    """Malformed graph, hypergraph, sequence or encoding text."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class UnknownVertexError(BDHError, KeyError):
    pass


class DisconnectedGraphError(BDHError, ValueError):
    pass


class UniversalVertexError(BDHError, ValueError):
    pass


class NotBDHError(BDHError, ValueError):
    pass


class InvalidSequenceError(BDHError, ValueError):
    pass


class SizeLimitError(BDHError, ValueError):
    pass


class EncodingFormatError(BDHError, ValueError):
    """Serialized encoding with a wrong version or inconsistent arrays."""
