"""Batch kernel dispatch.

Two interchangeable backends compute population-scale sweeps: compiled
numba loops and vectorized numpy.  MATGROWTH_BACKEND=numba|numpy forces
one; unset or "auto" prefers numba and falls back to numpy when numba is
missing.  The exact single-matrix routines in matrices/digraph stay the
source of truth; kernels exist to make exhaustive verification fast.
"""

from __future__ import annotations

import os

_requested = os.environ.get("MATGROWTH_BACKEND", "auto").strip().lower() or "auto"

if _requested == "numpy":
    from . import _kernels_numpy as _impl
    BACKEND = "numpy"
elif _requested == "numba":
    from . import _kernels_numba as _impl
    BACKEND = "numba"
elif _requested == "auto":
    try:
        from . import _kernels_numba as _impl
        BACKEND = "numba"
    except ImportError:
        from . import _kernels_numpy as _impl
        BACKEND = "numpy"
else:
    raise ValueError(
        f"MATGROWTH_BACKEND={_requested!r} not recognized; "
        "use 'numba', 'numpy' or 'auto'")

norm_sequences = _impl.norm_sequences
structure_flags = _impl.structure_flags
diag_bounded_by_one = _impl.diag_bounded_by_one
first_diag_ge2 = _impl.first_diag_ge2


def warm_up():
    """Trigger compilation on a tiny input so timed sweeps never pay it."""
    import numpy as np

    tiny = np.array([[[1, 0], [1, 0]], [[1, 1], [1, 1]]], dtype=np.int64)
    norm_sequences(tiny, 3)
    structure_flags(tiny)
    diag_bounded_by_one(tiny, 4)
    first_diag_ge2(tiny, 4)
