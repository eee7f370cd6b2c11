"""Pick the compiled kernel when it is importable, else the numpy fallback.

Setting ADEG_PURE_PYTHON=1 forces the fallback (used by the benchmark and
the cross-backend tests).
"""
import os

from . import _fallback

if os.environ.get("ADEG_PURE_PYTHON") == "1":
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

mul_trunc = _impl.mul_trunc
span_profile = _impl.span_profile
