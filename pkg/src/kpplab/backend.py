"""Kernel backend selection.

The compiled extension (``kpplab._kernels_cy``) is preferred when importable;
the pure-Python twin is the fallback.  ``KPPLAB_BACKEND=python|cython``
forces a choice, which the benchmark and the parity tests use.  Both backends
implement the same floating-point operation sequence, so results do not
depend on the choice.
"""

import os

from . import _kernels_py

_forced = os.environ.get("KPPLAB_BACKEND", "").strip().lower()

if _forced in ("python", "py"):
    kernels = _kernels_py
elif _forced in ("cython", "cy", "c"):
    from . import _kernels_cy as kernels  # noqa: F401  (ImportError is the answer here)
else:
    try:
        from . import _kernels_cy as kernels
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND_NAME


def get_kernels(name: str):
    """Explicitly load one backend ('python' or 'cython'); used by benchmarks/tests."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels_cy
        return _kernels_cy
    raise ValueError(f"unknown backend {name!r}")


def available_backends():
    out = ["python"]
    try:
        from . import _kernels_cy  # noqa: F401
        out.append("cython")
    except ImportError:
        pass
    return out
