"""Select the compiled linear-algebra kernel, falling back to pure Python.

Set ``WREATHQ_PURE=1`` in the environment to force the fallback (useful
for benchmarking and for debugging the extension).
"""

import os

from . import _kernel_py

if os.environ.get("WREATHQ_PURE"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernel_py

IMPLEMENTATION = _impl.IMPLEMENTATION
mat_mul = _impl.mat_mul
rref = _impl.rref

# specialised rational kernels exist only in the compiled extension
mat_mul_q = getattr(_impl, "mat_mul_q", None)
rref_q = getattr(_impl, "rref_q", None)
