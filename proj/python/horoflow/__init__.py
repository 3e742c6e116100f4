"""Volume-preserving capillary curvature flow on radial graphs in a horoball."""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # in-tree test layout: _core.so on PYTHONPATH
    from _core import *  # noqa: F401,F403

__version__ = "0.1.0"
