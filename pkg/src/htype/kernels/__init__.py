"""Polyline kernel backend selection.

Imports the compiled extension when present, otherwise the numpy
implementation. HTYPE_KERNEL=c / HTYPE_KERNEL=py forces a backend
(forcing the compiled one raises if it was not built).
"""
import os
import warnings

_force = os.environ.get("HTYPE_KERNEL", "").strip().lower()

if _force in ("py", "python", "purepy"):
    from . import _purepy as _impl

    BACKEND = "python"
elif _force in ("", "c", "compiled"):
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        if _force:
            raise
        warnings.warn(
            "compiled polyline kernels unavailable; falling back to the "
            "pure-Python implementation (brute-force distance searches "
            "will be slower)",
            RuntimeWarning,
            stacklevel=2,
        )
        from . import _purepy as _impl

        BACKEND = "python"
else:
    raise ValueError(f"HTYPE_KERNEL={_force!r}: expected 'c' or 'py'")

polyline_z = _impl.polyline_z
polyline_length = _impl.polyline_length
objective = _impl.objective
objective_grad = _impl.objective_grad
descend = _impl.descend

__all__ = [
    "BACKEND",
    "polyline_z",
    "polyline_length",
    "objective",
    "objective_grad",
    "descend",
]
