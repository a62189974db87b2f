"""Kernel backend selection.

The compiled extension is optional; when it is missing (or when
``ZCGROUPS_PURE`` is set to a nonempty value other than ``0``) the
pure-Python twin is used.  Both expose the same ``Kernel`` class.
"""
import os

from . import _kernels_py

try:
    from . import _speedups
except ImportError:
    _speedups = None

_FORCE_PURE = os.environ.get("ZCGROUPS_PURE", "") not in ("", "0")


def active_module():
    if _speedups is None or _FORCE_PURE:
        return _kernels_py
    return _speedups


def backend_name() -> str:
    """Name of the kernel backend in use: ``"compiled"`` or ``"pure"``."""
    return "pure" if active_module() is _kernels_py else "compiled"


def modules() -> dict:
    """All importable kernel modules, keyed by backend name."""
    mods = {"pure": _kernels_py}
    if _speedups is not None:
        mods["compiled"] = _speedups
    return mods
