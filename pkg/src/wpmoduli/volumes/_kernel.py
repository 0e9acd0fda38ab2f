"""Pick the recursion engine at import time.

The compiled core is used when it imported cleanly and the requested degree
fits its 64-bit multiset keys; otherwise the pure-Python engine runs.  Set
``WPMODULI_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _engine_py

try:
    if os.environ.get("WPMODULI_PURE"):
        raise ImportError("pure engine forced by WPMODULI_PURE")
    from . import _engine_ext
except ImportError:  # pragma: no cover - depends on the build
    _engine_ext = None

COMPILED_AVAILABLE = _engine_ext is not None
COMPILED_MAX_DEGREE = _engine_ext.MAX_DEGREE if _engine_ext is not None else -1


def make_engine(max_degree: int, backend: str | None = None):
    """Return a fresh engine able to reach ``max_degree``.

    ``backend`` may be ``"compiled"`` or ``"python"`` to override the choice.
    """
    if backend == "python":
        return _engine_py.RecursionEngine()
    if backend == "compiled":
        if _engine_ext is None:
            raise RuntimeError("compiled engine is not available")
        if max_degree > COMPILED_MAX_DEGREE:
            raise ValueError(f"compiled engine stops at degree {COMPILED_MAX_DEGREE}")
        return _engine_ext.RecursionEngine(max_degree)
    if backend is not None:
        raise ValueError(f"unknown backend {backend!r}")
    if _engine_ext is not None and max_degree <= COMPILED_MAX_DEGREE:
        return _engine_ext.RecursionEngine(max_degree)
    return _engine_py.RecursionEngine()


def default_backend(max_degree: int) -> str:
    if _engine_ext is not None and max_degree <= COMPILED_MAX_DEGREE:
        return "compiled"
    return "python"
