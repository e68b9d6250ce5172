"""JIT switch for the hot kernels.

Set ``ROMANBOND_NO_NUMBA=1`` to run every kernel as plain Python. The kernels
are written so both paths execute the same code.
"""
from __future__ import annotations

import os

USE_NUMBA = os.environ.get("ROMANBOND_NO_NUMBA", "").strip().lower() in ("", "0", "false", "no")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if not USE_NUMBA:

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


__all__ = ["USE_NUMBA", "njit"]
