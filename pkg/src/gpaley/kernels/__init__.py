"""Hot inner loops, numba-compiled when available.

``GPALEY_DISABLE_NUMBA=1`` (or numba failing to import) selects the numpy
implementations. Both backends return identical results; ``backend(name)``
gives explicit access to either one for comparisons.
"""

from types import ModuleType

from .. import _config
from . import _numpy

try:
    from . import _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

__all__ = ["BACKEND", "backend", "refine", "scheme_mismatch", "component_labels"]


def backend(name: str) -> ModuleType:
    if name == "numpy":
        return _numpy
    if name == "numba":
        if _numba is None:
            raise RuntimeError("numba is not importable")
        return _numba
    raise ValueError(f"unknown kernel backend {name!r}")


BACKEND = "numpy" if (_numba is None or _config.numba_disabled()) else "numba"
_active = backend(BACKEND)

refine = _active.refine
scheme_mismatch = _active.scheme_mismatch
component_labels = _active.component_labels
