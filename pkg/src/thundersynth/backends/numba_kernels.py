"""Numba-jitted sample-loop kernels.

Each function has a numpy twin in ``numpy_kernels`` with the same signature
and the same operation order, so both backends agree to the last bit (or to
rounding noise for the recursive filters).
"""

import numpy as np
from numba import njit


@njit(cache=True)
def biquad_blocks(x, coeffs, block_len, zi):
    """Run a two-pole/two-zero filter over ``x`` in blocks.

    ``coeffs`` holds one row [b0, b1, b2, a1, a2] per block (a0 already
    normalized out). Direct form II transposed; ``zi`` is the 2-element
    initial state, consumed without mutation.
    """
    n = x.shape[0]
    y = np.empty(n)
    z1 = zi[0]
    z2 = zi[1]
    for k in range(coeffs.shape[0]):
        b0 = coeffs[k, 0]
        b1 = coeffs[k, 1]
        b2 = coeffs[k, 2]
        a1 = coeffs[k, 3]
        a2 = coeffs[k, 4]
        start = k * block_len
        stop = min(start + block_len, n)
        for i in range(start, stop):
            xi = x[i]
            yi = b0 * xi + z1
            z1 = (b1 * xi + z2) - a1 * yi
            z2 = b2 * xi - a2 * yi
            y[i] = yi
    return y


@njit(cache=True)
def sample_and_hold(x, trigger):
    """Hold the last captured input; capture when the trigger wraps down."""
    n = x.shape[0]
    y = np.empty(n)
    if n == 0:
        return y
    held = x[0]
    y[0] = held
    for i in range(1, n):
        if trigger[i] < trigger[i - 1]:
            held = x[i]
        y[i] = held
    return y


@njit(cache=True)
def feedback_delay(x, delay_samples, feedback):
    """y[n] = x[n] + feedback * y[n - delay_samples] (zero history)."""
    y = x.copy()
    for i in range(delay_samples, x.shape[0]):
        y[i] = x[i] + feedback * y[i - delay_samples]
    return y


@njit(cache=True)
def gain_follower(target, attack_coeff, release_coeff):
    """Smooth a target gain curve with one-pole attack/release ballistics.

    Gain starts from unity. A coefficient of 0 tracks the target instantly.
    """
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


@njit(cache=True)
def phasor_frac(increments, phase0):
    """Accumulate per-sample phase increments, return the fractional part.

    Grouped as phase0 + running_sum so the result is bit-identical to the
    numpy cumsum fallback.
    """
    n = increments.shape[0]
    out = np.empty(n)
    acc = 0.0
    for i in range(n):
        acc = acc + increments[i]
        v = phase0 + acc
        out[i] = v - np.floor(v)
    return out
