"""Backend selection for the counting kernel.

The compiled extension is used when it imports and the instance fits its
fixed-width arithmetic; otherwise the pure-Python kernel runs.
"""
from __future__ import annotations

from . import _kernel_py

try:
    from . import _kernel as _native
except ImportError:  # extension not built
    _native = None

NATIVE_AVAILABLE = _native is not None
_backend = "auto"


def set_backend(name: str) -> None:
    """Choose ``"auto"``, ``"python"`` or ``"native"``."""
    global _backend
    if name not in ("auto", "python", "native"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "native" and not NATIVE_AVAILABLE:
        raise RuntimeError("native kernel is not built")
    _backend = name


def get_backend() -> str:
    return _backend


def _fits_native(domains, adj) -> bool:
    if len(adj) > 64:
        return False
    bound = 1
    for d in domains:
        bound *= max(1, bin(d).count("1"))
        if bound >= 1 << 63:
            return False
    return True


def count_assignments(domains, back, adj, injective=False, backend=None) -> int:
    mode = backend or _backend
    if mode != "python" and NATIVE_AVAILABLE and _fits_native(domains, adj):
        return _native.count_assignments(list(domains), [list(b) for b in back],
                                         list(adj), bool(injective))
    if mode == "native" and backend == "native":
        raise ValueError("instance does not fit the native kernel")
    return _kernel_py.count_assignments(domains, back, adj, injective)


iter_assignments = _kernel_py.iter_assignments
