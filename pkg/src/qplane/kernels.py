"""Kernel backend selection.

Imports the compiled ``_ckernels`` extension when it has been built and falls
back to ``_pykernels`` otherwise. Setting ``QPLANE_PURE=1`` forces the
fallback.
"""

import os

if os.environ.get("QPLANE_PURE", "") not in ("", "0"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
triangle_marks = _impl.triangle_marks
pair_count = _impl.pair_count
uncovered_targets = _impl.uncovered_targets
difference_cover = _impl.difference_cover
