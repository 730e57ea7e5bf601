"""Backend selection for the hot numerical kernels.

The compiled extension is preferred; the pure-python/numpy module is a
drop-in replacement when the extension is unavailable (e.g. no compiler).
``BACKEND`` reports which one is active; both are importable side by side
for the parity tests and the benchmark.
"""

from dislocflux import _pykernels

try:
    from dislocflux import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

SERIES_OK = _pykernels.SERIES_OK
SERIES_CAP = _pykernels.SERIES_CAP
SERIES_OVERFLOW = _pykernels.SERIES_OVERFLOW

kummer_series = _impl.kummer_series
sturm_count = _impl.sturm_count
sturm_lowest = _impl.sturm_lowest
tridiag_shifted_solve = _impl.tridiag_shifted_solve
