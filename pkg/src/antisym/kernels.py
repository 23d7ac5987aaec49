"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``ANTISYM_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
the kernel equivalence tests).
"""

import os

if os.environ.get("ANTISYM_PURE_PYTHON", "") not in ("", "0"):
    from antisym._pykernels import (  # noqa: F401
        below_mask, cw_heap_index, cw_node, entry_rank, prefix_ranks,
        ternary_numerator)
    BACKEND = "python"
else:
    try:
        from antisym._kernels import (  # noqa: F401
            below_mask, cw_heap_index, cw_node, entry_rank, prefix_ranks,
            ternary_numerator)
        BACKEND = "cython"
    except ImportError:
        from antisym._pykernels import (  # noqa: F401
            below_mask, cw_heap_index, cw_node, entry_rank, prefix_ranks,
            ternary_numerator)
        BACKEND = "python"
