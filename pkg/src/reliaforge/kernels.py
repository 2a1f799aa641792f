"""Numeric kernel dispatch.

The numba backend is used when available; set RELIAFORGE_NO_NUMBA=1 to force
the pure-numpy fallback.  ``BACKEND`` records which one is active.  Both
backends are importable side by side (see benchmarks/bench_kernels.py).
"""

from __future__ import annotations

import os


def _numba_disabled() -> bool:
    return os.environ.get("RELIAFORGE_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


if _numba_disabled():
    from . import _kernels_numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - exercised only without numba installed
        from . import _kernels_numpy as _impl

        BACKEND = "numpy"

path_products = _impl.path_products
od_values = _impl.od_values
system_index = _impl.system_index
system_index_batch = _impl.system_index_batch
system_gradient = _impl.system_gradient
victim_indices = _impl.victim_indices
exact_up_probability = _impl.exact_up_probability
project_box_budget = _impl.project_box_budget
ascent = _impl.ascent
