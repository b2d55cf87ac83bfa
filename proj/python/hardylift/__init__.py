"""Truncated Hardy-space toolkit: canonical inner-function lifting."""

try:
    from ._hardylift import *  # noqa: F401,F403  (installed package layout)
    from ._hardylift import __version__  # noqa: F401
except ImportError:  # in-tree builds place the module next to the package
    from _hardylift import *  # noqa: F401,F403
    from _hardylift import __version__  # noqa: F401
