"""Hermitian eigensolver kernels.

Two interchangeable implementations of the same algorithm (complex Householder
tridiagonalization followed by implicit-shift QL): a Cython extension for the
hot path and a numpy fallback.  The backend is selected once at import; set
``JNR_KERNEL=python`` or ``JNR_KERNEL=compiled`` to force a choice.
"""

import os

from . import _eigh_py

_requested = os.environ.get("JNR_KERNEL", "auto").strip().lower()

_compiled = None
if _requested in ("auto", "compiled"):
    try:
        from . import _eigh_cy as _compiled
    except ImportError:
        _compiled = None
        if _requested == "compiled":
            raise ImportError(
                "JNR_KERNEL=compiled but the jnrlab._kernels._eigh_cy extension "
                "is not built; run `pip install -e . --no-build-isolation`"
            )

if _requested == "python" or _compiled is None:
    _impl = _eigh_py
    BACKEND = "python"
else:
    _impl = _compiled
    BACKEND = "compiled"


def backend_name():
    return BACKEND


def eigh_raw(h, max_iter=64):
    """Eigendecomposition of a Hermitian matrix (no input checking).

    Returns ``(status, values, vectors)`` with ``status`` nonzero when the QL
    iteration budget was exhausted.  Values are unordered; callers sort.
    """
    return _impl.eigh_raw(h, max_iter)
