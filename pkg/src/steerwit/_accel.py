"""Optional numba acceleration.

Kernels in :mod:`steerwit.kernels` are written in the numba-compatible subset
of Python/numpy.  They are compiled with ``numba.njit`` unless numba is missing
or ``STEERWIT_NO_JIT`` is set to a truthy value, in which case the very same
functions run as plain numpy code.
"""
import os

try:
    from numba import njit as _njit
    numba_installed = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_installed = False

_FLAG = os.environ.get("STEERWIT_NO_JIT", "").strip().lower()
jit_disabled = _FLAG not in ("", "0", "false", "no")

JIT_ENABLED = numba_installed and not jit_disabled


def optional_njit(*args, **kwargs):
    def decorator(func):
        if JIT_ENABLED:
            return _njit(*args, **kwargs)(func)
        return func
    return decorator
