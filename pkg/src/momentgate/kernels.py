"""Backend selection for the numerical kernels.

The compiled extension is used when it imports; otherwise the pure-Python
twins are. Set ``MOMENTGATE_BACKEND=python`` to force the fallback (useful
for testing the fallback and for benchmarking).
"""

import os
from types import ModuleType

from momentgate import _fallback

BACKENDS: dict[str, ModuleType] = {"python": _fallback}

try:
    from momentgate import _kernels
except ImportError:  # extension not built
    _kernels = None
else:
    BACKENDS["cython"] = _kernels


def _select() -> str:
    wanted = os.environ.get("MOMENTGATE_BACKEND", "").strip().lower()
    if wanted:
        if wanted not in BACKENDS:
            raise ImportError(
                f"MOMENTGATE_BACKEND={wanted!r} is not available; have {sorted(BACKENDS)}"
            )
        return wanted
    return "cython" if "cython" in BACKENDS else "python"


BACKEND = _select()
_impl = BACKENDS[BACKEND]

jacobi_eigh = _impl.jacobi_eigh
lu_det = _impl.lu_det
secular_root = _impl.secular_root
ellipse_scan = _impl.ellipse_scan
ellipsoid_scan = _impl.ellipsoid_scan

__all__ = [
    "BACKEND",
    "BACKENDS",
    "jacobi_eigh",
    "lu_det",
    "secular_root",
    "ellipse_scan",
    "ellipsoid_scan",
]
