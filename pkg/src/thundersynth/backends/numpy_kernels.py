"""Pure numpy/scipy fallback kernels.

Same contracts as ``numba_kernels``. The recursive filter leans on
scipy.signal.lfilter per block; sample-and-hold and the phasor are fully
vectorized; the gain follower is an honest per-sample loop and is the slow
spot of this backend (see benchmarks/bench_backends.py).
"""

import numpy as np
from scipy.signal import lfilter


def biquad_blocks(x, coeffs, block_len, zi):
    n = x.shape[0]
    y = np.empty(n)
    z = np.asarray(zi, dtype=np.float64).copy()
    for k in range(coeffs.shape[0]):
        b = coeffs[k, 0:3]
        a = np.array([1.0, coeffs[k, 3], coeffs[k, 4]])
        start = k * block_len
        stop = min(start + block_len, n)
        y[start:stop], z = lfilter(b, a, x[start:stop], zi=z)
    return y


def sample_and_hold(x, trigger):
    n = x.shape[0]
    if n == 0:
        return np.empty(0)
    capture = np.empty(n, dtype=bool)
    capture[0] = True
    capture[1:] = trigger[1:] < trigger[:-1]
    idx = np.where(capture, np.arange(n), 0)
    np.maximum.accumulate(idx, out=idx)
    return x[idx]


def feedback_delay(x, delay_samples, feedback):
    y = x.copy()
    n = x.shape[0]
    start = delay_samples
    # Chunks of one delay length never read samples written in the same chunk.
    while start < n:
        stop = min(start + delay_samples, n)
        y[start:stop] = x[start:stop] + feedback * y[start - delay_samples : stop - delay_samples]
        start = stop
    return y


def gain_follower(target, attack_coeff, release_coeff):
    n = target.shape[0]
    g = np.empty(n)
    prev = 1.0
    for i in range(n):
        t = target[i]
        if t < prev:
            prev = t + attack_coeff * (prev - t)
        else:
            prev = t + release_coeff * (prev - t)
        g[i] = prev
    return g


def phasor_frac(increments, phase0):
    acc = phase0 + np.cumsum(increments)
    return acc - np.floor(acc)
