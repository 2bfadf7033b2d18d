"""Kernel selection: compiled extension when available, pure Python otherwise.

Set KNOTFIELD_PURE_PYTHON=1 to force the fallback (used by the benchmark
and by tests that compare the two implementations).
"""

from __future__ import annotations

import os

if os.environ.get("KNOTFIELD_PURE_PYTHON") == "1":
    from . import _slowmoves as _impl
else:
    try:
        from . import _fastmoves as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _slowmoves as _impl

expand = _impl.expand
BACKEND = _impl.BACKEND


def pure_python_expand():
    from . import _slowmoves
    return _slowmoves.expand
