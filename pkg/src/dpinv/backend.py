"""Select the compiled kernels when available, else the pure-Python ones.

Set DPINV_PURE=1 in the environment to force the pure-Python kernels (used
by the benchmark and the kernel-equivalence tests).
"""

import os

if os.environ.get("DPINV_PURE"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND = "python"

poly_mul = kernels.poly_mul
poly_add_scaled = kernels.poly_add_scaled
bareiss_rank = kernels.bareiss_rank


def backend_name() -> str:
    return BACKEND
