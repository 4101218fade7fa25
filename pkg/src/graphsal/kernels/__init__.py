"""Kernel dispatch: compiled extension when available, numpy fallback otherwise.

Set GRAPHSAL_PURE=1 in the environment to force the fallback (used by the
benchmark and the cross-implementation tests).
"""

import os

if os.environ.get("GRAPHSAL_PURE"):
    from . import fallback as impl

    USING_NATIVE = False
else:
    try:
        from . import _native as impl  # type: ignore[attr-defined]

        USING_NATIVE = True
    except ImportError:
        from . import fallback as impl

        USING_NATIVE = False

slic_assign = impl.slic_assign
slic_accumulate = impl.slic_accumulate
pairwise_line_max = impl.pairwise_line_max
