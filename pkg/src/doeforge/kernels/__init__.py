"""Hot numeric kernels: compiled extension if built, numpy fallback otherwise.

Set ``DOEFORGE_PURE_PYTHON=1`` before import to force the fallback; the
benchmark in ``benchmarks/`` imports both backends directly to compare them.
"""

import os

from . import _kernels_py

if os.environ.get("DOEFORGE_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

#: Active backend: "cython" or "python".
BACKEND = "python" if _impl is _kernels_py else "cython"

min_dist_sq = _impl.min_dist_sq
maximin_interchange = _impl.maximin_interchange
cvt_assign = _impl.cvt_assign
cl2_pair_sum = _impl.cl2_pair_sum
