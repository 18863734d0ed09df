"""Kernel dispatch: the compiled extension when importable, else the pure-Python fallback.

Set WALAB_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("WALAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels
else:
    _impl = _pykernels

shell_counts = _impl.shell_counts
eta_power_coeffs = _impl.eta_power_coeffs

__all__ = ["BACKEND", "shell_counts", "eta_power_coeffs"]
