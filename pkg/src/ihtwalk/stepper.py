"""Backend selection for the step kernels.

Prefers the compiled extension; falls back to the numpy loops if the
extension is missing (or if IHTWALK_PURE_PYTHON is set, which the test
suite and benchmark use to exercise both paths). Both backends take
complex128/int64 contiguous arrays; ``as_kernel_args`` normalizes inputs.
"""

from __future__ import annotations

import os

import numpy as np

from . import _steppy

if os.environ.get("IHTWALK_PURE_PYTHON"):
    _impl = _steppy
    BACKEND = "python"
else:
    try:
        from . import _stepcore as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _steppy
        BACKEND = "python"


def as_kernel_args(psi, coin, perm, final_rows=None):
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    coin = np.ascontiguousarray(coin, dtype=np.complex128)
    perm = np.ascontiguousarray(perm, dtype=np.int64)
    if final_rows is None:
        return psi, coin, perm
    return psi, coin, perm, np.ascontiguousarray(final_rows, dtype=np.int64)


def evolve(psi, coin, perm, n_steps):
    return _impl.evolve(*as_kernel_args(psi, coin, perm), n_steps)


def measured_run(psi, coin, perm, final_rows, n_steps):
    return _impl.measured_run(*as_kernel_args(psi, coin, perm, final_rows),
                              n_steps)
