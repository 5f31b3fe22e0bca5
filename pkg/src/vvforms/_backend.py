"""Select the kernel implementation at import time.

The compiled module is used when it was built and ``VVFORMS_PURE_PYTHON`` is
unset or ``0``.  ``BACKEND`` names the active implementation.
"""

import os

from . import _kernels as python_kernels

try:
    from . import _ckernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and os.environ.get("VVFORMS_PURE_PYTHON", "0") in ("", "0"):
    kernels = compiled_kernels
    BACKEND = "cython"
else:
    kernels = python_kernels
    BACKEND = "python"

block_terms = kernels.block_terms
contract_terms = kernels.contract_terms
