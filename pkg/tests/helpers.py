"""Independent oracles shared by the test modules.

Everything here is deliberately written from first principles (double sums,
closed-form prototype responses, direct DTFT evaluation) so it cannot share
a bug with the implementation paths it checks.
"""

import numpy as np

from thundersynth.constants import SAMPLE_RATE


def brute_force_convolve(x, ir):
    """O(n*m) double-sum convolution."""
    x = np.asarray(x, dtype=np.float64)
    ir = np.asarray(ir, dtype=np.float64)
    out = np.zeros(len(x) + len(ir) - 1)
    for i, xi in enumerate(x):
        for j, hj in enumerate(ir):
            out[i + j] += xi * hj
    return out


def analog_prototype_magnitude(kind, f0, q, freqs, sample_rate=SAMPLE_RATE):
    """Magnitude of the second-order analog prototype on the bilinear-warped
    frequency axis (the axis a bilinear-discretized filter realizes)."""
    omega = np.tan(np.pi * np.asarray(freqs, dtype=np.float64) / sample_rate) / np.tan(
        np.pi * f0 / sample_rate
    )
    den = np.sqrt((1.0 - omega**2) ** 2 + (omega / q) ** 2)
    if kind == "lowpass":
        return 1.0 / den
    if kind == "highpass":
        return omega**2 / den
    if kind == "bandpass":
        return (omega / q) / den
    raise ValueError(kind)


def measure_magnitude(impulse_response, freqs, sample_rate=SAMPLE_RATE):
    """|DTFT| of a measured impulse response at exact probe frequencies."""
    n = np.arange(len(impulse_response))
    basis = np.exp(-2j * np.pi * np.outer(np.asarray(freqs), n) / sample_rate)
    return np.abs(basis @ np.asarray(impulse_response))


def schroeder_t60(ir, sample_rate=SAMPLE_RATE):
    """Time at which backward-integrated energy has fallen 60 dB."""
    ir = np.asarray(ir, dtype=np.float64)
    energy = ir**2 if ir.ndim == 1 else (ir**2).sum(axis=1)
    curve = np.cumsum(energy[::-1])[::-1]
    level_db = 10.0 * np.log10(curve / curve[0])
    idx = np.argmax(level_db <= -60.0)
    if level_db[idx] > -60.0:
        raise AssertionError("decay never reaches -60 dB")
    return idx / sample_rate


def rms(x):
    x = np.asarray(x, dtype=np.float64)
    return float(np.sqrt(np.mean(x**2))) if len(x) else 0.0


def rms_db(x):
    return 20.0 * np.log10(max(rms(x), 1e-30))


def band_energy_fraction(x, lo_hz, hi_hz, sample_rate=SAMPLE_RATE):
    """Fraction of spectral energy inside [lo_hz, hi_hz]."""
    spectrum = np.abs(np.fft.rfft(np.asarray(x, dtype=np.float64))) ** 2
    freqs = np.fft.rfftfreq(len(x), 1.0 / sample_rate)
    total = spectrum.sum()
    if total == 0:
        return 0.0
    mask = (freqs >= lo_hz) & (freqs <= hi_hz)
    return float(spectrum[mask].sum() / total)
