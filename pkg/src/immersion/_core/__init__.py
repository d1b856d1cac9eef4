"""Flow and reachability kernels on compressed adjacency arrays.

The compiled module ``_kernels`` is used when it was built; otherwise the
pure-Python ``_kernels_py`` is imported.  Both traverse arcs in exactly the
same order, so results are identical.

Array layout (all indices local, 0..n-1 vertices and 0..m-1 arcs, arcs
sorted by global arc id):

``out_start[v]:out_start[v+1]`` slices ``out_arc`` to the arcs leaving v;
``in_start``/``in_arc`` likewise for entering arcs; ``tail``/``head`` give
arc endpoints.  ``flow`` and ``blocked`` are per-arc 0/1 arrays.
"""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

default = _compiled if _compiled is not None else _kernels_py
DEFAULT_BACKEND = "cython" if _compiled is not None else "python"


def get_backend(name: str | None = None):
    if name is None:
        return default
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None
