"""Traversal kernels with a compiled fast path.

The Cython extension ``_core`` is used when it was built; otherwise, or when
the environment variable ``SEPCERT_PURE=1`` is set, the pure-Python twin in
``_pure`` is used. Both produce identical results.
"""

import os

from . import _pure

try:
    from . import _core
except ImportError:  # extension not built
    _core = None

BACKENDS = {"python": _pure}
if _core is not None:
    BACKENDS["compiled"] = _core

_active = _pure if (_core is None or os.environ.get("SEPCERT_PURE") == "1") else _core


def backend_name():
    return "compiled" if _active is _core and _core is not None else "python"


def set_backend(name):
    """Switch the active backend (``"python"`` or ``"compiled"``)."""
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    _active = BACKENDS[name]


def bfs_distances(indptr, indices, source, mask):
    return _active.bfs_distances(indptr, indices, source, mask)


def component_labels(indptr, indices, mask):
    return _active.component_labels(indptr, indices, mask)


def boundary(indptr, indices, source_mask, target_mask):
    return _active.boundary(indptr, indices, source_mask, target_mask)
