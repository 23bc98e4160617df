"""Kernel backend selection.

The sample-loop kernels (recursive filters, sample-and-hold, feedback delay,
gain smoothing) exist twice: a numba-jitted implementation and a pure
numpy/scipy fallback. The active backend is chosen once at import time from
the ``THUNDERSYNTH_BACKEND`` environment variable:

    auto   (default) use numba when importable, else numpy
    numba  require numba, fail loudly if missing
    numpy  force the fallback path

``benchmarks/bench_backends.py`` compares the two.
"""

import os

_VALID = ("auto", "numba", "numpy")


def get_kernels(name: str):
    """Import and return the kernel module for an explicit backend name."""
    if name == "numba":
        from . import numba_kernels

        return numba_kernels
    if name == "numpy":
        from . import numpy_kernels

        return numpy_kernels
    raise ValueError(f"unknown backend {name!r}, expected one of {_VALID}")


def _select():
    choice = os.environ.get("THUNDERSYNTH_BACKEND", "auto").strip().lower()
    if choice not in _VALID:
        raise ValueError(
            f"THUNDERSYNTH_BACKEND={choice!r} is not valid; expected one of {_VALID}"
        )
    if choice == "numpy":
        return get_kernels("numpy"), "numpy"
    try:
        return get_kernels("numba"), "numba"
    except ImportError:
        if choice == "numba":
            raise
        return get_kernels("numpy"), "numpy"


kernels, BACKEND = _select()


def warmup() -> None:
    """Run every kernel once on tiny buffers so JIT cost is paid up front."""
    import numpy as np

    x = np.zeros(8, dtype=np.float64)
    coeffs = np.array([[1.0, 0.0, 0.0, 0.0, 0.0]])
    kernels.biquad_blocks(x, coeffs, 8, np.zeros(2))
    kernels.sample_and_hold(x, x)
    kernels.feedback_delay(x, 2, 0.1)
    kernels.gain_follower(np.ones(8), 0.0, 0.5)
    kernels.phasor_frac(x, 0.0)
