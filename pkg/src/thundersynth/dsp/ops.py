"""Pointwise ops, sample-and-hold, the phasor and convolution."""

import numpy as np
from scipy.signal import fftconvolve

from .. import backends
from ..constants import SAMPLE_RATE


def clip(x, lo: float = -1.0, hi: float = 1.0):
    """Elementwise clamp into [lo, hi]."""
    return np.clip(x, lo, hi)


def half_rectify(x):
    """max(x, 0)."""
    return np.maximum(x, 0.0)


def sample_and_hold(x: np.ndarray, trigger: np.ndarray) -> np.ndarray:
    """Capture x[n] whenever trigger[n] < trigger[n-1], hold it otherwise.

    Output starts on x[0].
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    trigger = np.ascontiguousarray(trigger, dtype=np.float64)
    if len(x) != len(trigger):
        raise ValueError(f"length mismatch: {len(x)} vs {len(trigger)}")
    return backends.kernels.sample_and_hold(x, trigger)


def convolve(x: np.ndarray, ir: np.ndarray) -> np.ndarray:
    """Full-length linear convolution (len(x) + len(ir) - 1 samples).

    Zero padding around the signal stays exactly zero: the FFT fast path
    only sees the nonzero core, so leading silence is preserved bit-exactly
    instead of picking up rounding dust.
    """
    x = np.asarray(x, dtype=np.float64)
    ir = np.asarray(ir, dtype=np.float64)
    if len(x) == 0 or len(ir) == 0:
        raise ValueError("convolution inputs must be non-empty")
    out = np.zeros(len(x) + len(ir) - 1)
    nz = np.flatnonzero(x)
    if len(nz) == 0:
        return out
    core = x[nz[0] : nz[-1] + 1]
    out[nz[0] : nz[0] + len(core) + len(ir) - 1] = fftconvolve(core, ir)
    return out


class Phasor:
    """Unit ramp in [0, 1): advances by f/sample_rate per tick, wraps modulo 1.

    The internal accumulator is unwrapped so that single ticks and block runs
    produce bit-identical trigger sequences.
    """

    def __init__(self, phase: float = 0.0, sample_rate: int = SAMPLE_RATE):
        self.sample_rate = sample_rate
        self._phase0 = float(phase)
        self._acc = 0.0

    @property
    def phase(self) -> float:
        v = self._phase0 + self._acc
        return v - np.floor(v)

    def tick(self, f: float) -> float:
        """Advance one sample at frequency f (Hz), return the wrapped phase."""
        if f < 0:
            raise ValueError(f"phasor frequency must be >= 0, got {f}")
        self._acc += f / self.sample_rate
        return self.phase

    def run(self, freqs: np.ndarray) -> np.ndarray:
        """Advance one sample per entry of freqs, return all wrapped phases."""
        freqs = np.ascontiguousarray(freqs, dtype=np.float64)
        if np.any(freqs < 0):
            raise ValueError("phasor frequencies must be >= 0")
        increments = freqs / self.sample_rate
        out = backends.kernels.phasor_frac(increments, self._phase0 + self._acc)
        if len(increments):
            # cumsum accumulates sequentially, matching the kernel bit-for-bit
            self._acc += float(np.cumsum(increments)[-1])
        return out
