"""Kernel backend selection.

The numba backend is used when numba imports cleanly, unless the environment
variable ``IRATE_NO_NUMBA`` is set to a truthy value (``1``, ``true``, ``yes``),
in which case the pure-numpy twins run instead. Both backends expose the same
functions with the same signatures.
"""

import os

from . import _numpy

_FALSY = {"", "0", "false", "no", "off"}


def _select():
    if os.environ.get("IRATE_NO_NUMBA", "").strip().lower() not in _FALSY:
        return _numpy
    try:
        from . import _numba
    except ImportError:  # numba missing or broken for this interpreter
        return _numpy
    return _numba


backend = _select()
BACKEND = backend.NAME

power_iterate = backend.power_iterate
lz78_parse = backend.lz78_parse
ceil_log2 = backend.ceil_log2
block_means = backend.block_means
dft_direct = backend.dft_direct
fft_radix2 = backend.fft_radix2
circular_moving_average = backend.circular_moving_average
pairwise_split_distance = backend.pairwise_split_distance

__all__ = [
    "BACKEND", "power_iterate", "lz78_parse", "ceil_log2", "block_means",
    "dft_direct", "fft_radix2", "circular_moving_average", "pairwise_split_distance",
]
