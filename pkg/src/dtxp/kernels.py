"""Kernel backend selection.

The compiled extension is used when it was built; otherwise (or when the
``DTXP_PURE`` environment variable is set) the pure-Python module is used.
Both expose ``reach``, ``shrink`` and ``horn_propagate`` over flat
``array.array`` buffers.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels


def _default() -> str:
    if os.environ.get("DTXP_PURE") or _ckernels is None:
        return "python"
    return "cython"


BACKEND = _default()
_impl = BACKENDS[BACKEND]


def use(name: str) -> str:
    """Switch the active backend; returns the previous one."""
    global BACKEND, _impl
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable (have {sorted(BACKENDS)})")
    prev, BACKEND, _impl = BACKEND, name, BACKENDS[name]
    return prev


def reach(*args):
    return _impl.reach(*args)


def shrink(*args):
    return _impl.shrink(*args)


def horn_propagate(*args):
    return _impl.horn_propagate(*args)
