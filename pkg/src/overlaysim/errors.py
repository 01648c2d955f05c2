"""Exception hierarchy shared by the simulator modules."""


class OverlayError(Exception):
    """Base class for every error raised by overlaysim."""


class ConfigurationError(OverlayError, ValueError):
    """A parameter is outside its legal range."""


class UnknownNodeError(OverlayError, IndexError):
    """A node id does not exist in the network."""


class SelfLoopError(OverlayError, ValueError):
    """An operation would connect a node to itself."""


class EmptyReportError(OverlayError, ValueError):
    """A metrics report was finalized before any outcome was recorded."""
