"""Kernel backend selection: compiled Cython extension when built, pure-numpy
mirror otherwise.  Both backends are importable directly (`._hot`, `.pure`)
so they can be compared head to head; the names re-exported here are what the
rest of the package uses.
"""

try:
    from . import _hot as _impl

    HAVE_COMPILED = True
except ImportError:
    from . import pure as _impl

    HAVE_COMPILED = False

BACKEND = _impl.BACKEND

eval_real = _impl.eval_real
eval_imag = _impl.eval_imag
jacobi_eigvals_batch = _impl.jacobi_eigvals_batch
sym_eigvals = _impl.sym_eigvals
toeplitz_scan_eigs = _impl.toeplitz_scan_eigs
mu1_integral = _impl.mu1_integral

__all__ = [
    "BACKEND",
    "HAVE_COMPILED",
    "eval_real",
    "eval_imag",
    "jacobi_eigvals_batch",
    "sym_eigvals",
    "toeplitz_scan_eigs",
    "mu1_integral",
]
