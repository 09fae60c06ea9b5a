"""Decoder kernel selection: compiled extension with pure-Python fallback.

The Cython kernel (``_bp_c``) is built at install time when a compiler
is available; otherwise, or when ``GF4LDPC_KERNEL=python`` is set, the
numpy reference implementation is used.  Both expose the same
``run_bp`` contract (see :mod:`.bp_python`).
"""

from __future__ import annotations

import importlib
import os

from . import bp_python

_FORCED = os.environ.get("GF4LDPC_KERNEL", "").strip().lower()

if _FORCED not in ("", "c", "compiled", "python"):
    raise RuntimeError(
        f"GF4LDPC_KERNEL={_FORCED!r} not recognised; use 'c' or 'python'")

_bp_c = None
if _FORCED != "python":
    try:
        _bp_c = importlib.import_module("._bp_c", __name__)
    except ImportError:
        if _FORCED in ("c", "compiled"):
            raise RuntimeError(
                "GF4LDPC_KERNEL requested the compiled kernel, but the "
                "extension is not built; reinstall with a C compiler")

if _bp_c is not None:
    BACKEND = "compiled"
    run_bp = _bp_c.run_bp
else:
    BACKEND = "python"
    run_bp = bp_python.run_bp


def available_backends() -> dict:
    """Name -> run_bp callable for every importable kernel."""
    out = {"python": bp_python.run_bp}
    if _bp_c is not None:
        out["compiled"] = _bp_c.run_bp
    return out
