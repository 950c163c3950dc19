"""Distance-search kernels: the compiled extension when importable, else pure Python.

Set HYPERLRC_PURE=1 to force the pure-Python path.
"""
import os

from . import fallback

BACKEND = "python"
support_branch = fallback.support_branch
gray_scan = fallback.gray_scan

if os.environ.get("HYPERLRC_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core
    except ImportError:  # extension not built
        _core = None
    if _core is not None:
        support_branch = _core.support_branch
        gray_scan = _core.gray_scan
        BACKEND = "cython"


def backends() -> dict:
    """All available implementations by name."""
    out = {"python": fallback}
    try:
        from . import _core as core
        out["cython"] = core
    except ImportError:
        pass
    return out
