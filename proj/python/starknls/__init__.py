"""Pseudo-spectral simulator and diagnostics for the nonlinear Schrodinger
equation with a linear (Stark) potential."""

try:
    from ._core import *  # noqa: F401,F403
    from . import _core as _impl
except ImportError:  # in-tree builds keep the extension outside the package
    from _core import *  # noqa: F401,F403
    import _core as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
