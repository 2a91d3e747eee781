"""Process-wide knobs read from the environment.

``GPALEY_MAX_Q`` overrides the global field-size bound. ``GPALEY_DISABLE_NUMBA``
(any value other than ``""``/``"0"``) forces the pure-numpy kernels.
"""

import os

DEFAULT_MAX_Q = 1 << 20


def max_q() -> int:
    raw = os.environ.get("GPALEY_MAX_Q", "")
    return int(raw) if raw.strip() else DEFAULT_MAX_Q


def numba_disabled() -> bool:
    return os.environ.get("GPALEY_DISABLE_NUMBA", "").strip() not in ("", "0")
