"""Post-processing: feedback delay, equal-power panning, convolution reverb,
dynamics compression and the synthetic shoreline impulse response."""

import math
from dataclasses import dataclass

import numpy as np

from . import backends
from .constants import SAMPLE_RATE
from .dsp.biquad import DEFAULT_Q, biquad_filter
from .dsp.noise import noise_stream
from .dsp.ops import convolve

PAN_RANGE_DEG = (-60.0, 60.0)

SILENCE_FLOOR_DB = -200.0


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 20.0)


def linear_to_db(value: float) -> float:
    return 20.0 * math.log10(max(value, 1e-10))


@dataclass(frozen=True)
class FeedbackSpec:
    """Delayed feedback loop: delay in seconds, wet/dry ratio below 1."""

    delay_time: float
    feedback: float

    def __post_init__(self):
        if self.delay_time < 0:
            raise ValueError(f"delay_time must be >= 0, got {self.delay_time}")
        if not 0 <= self.feedback < 1:
            raise ValueError(f"feedback must lie in [0, 1), got {self.feedback}")


def feedback_delay(x: np.ndarray, spec: FeedbackSpec, sample_rate: int = SAMPLE_RATE) -> np.ndarray:
    """y[n] = x[n] + feedback * y[n - delay]; echoes decay geometrically."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if spec.feedback == 0.0:
        return x.copy()
    delay_samples = int(round(spec.delay_time * sample_rate))
    if delay_samples == 0:
        # Zero-delay loop has the closed form y = x / (1 - feedback).
        return x / (1.0 - spec.feedback)
    return backends.kernels.feedback_delay(x, delay_samples, spec.feedback)


@dataclass(frozen=True)
class PanSpec:
    """Equal-power stereo placement; azimuth in degrees, -60 = hard left."""

    azimuth: float

    def __post_init__(self):
        lo, hi = PAN_RANGE_DEG
        if not lo <= self.azimuth <= hi:
            raise ValueError(f"azimuth must lie in [{lo}, {hi}] degrees, got {self.azimuth}")

    def gains(self) -> tuple[float, float]:
        lo, hi = PAN_RANGE_DEG
        angle = (self.azimuth - lo) / (hi - lo) * (np.pi / 2.0)
        return float(np.cos(angle)), float(np.sin(angle))


def pan(x: np.ndarray, spec: PanSpec) -> np.ndarray:
    """Place a mono signal in the stereo field; returns shape (n, 2)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("pan expects a mono signal")
    gl, gr = spec.gains()
    return np.stack([x * gl, x * gr], axis=1)


def reverb(x: np.ndarray, ir: np.ndarray) -> np.ndarray:
    """Convolve a signal with an impulse response.

    Mono x against a stereo IR yields stereo output (one convolution per
    channel). Output carries the full convolution tail.
    """
    x = np.asarray(x, dtype=np.float64)
    ir = np.asarray(ir, dtype=np.float64)
    if x.ndim == 1 and ir.ndim == 1:
        return convolve(x, ir)
    if x.ndim == 1 and ir.ndim == 2:
        return np.stack([convolve(x, ir[:, c]) for c in range(ir.shape[1])], axis=1)
    if x.ndim == 2 and ir.ndim == 1:
        return np.stack([convolve(x[:, c], ir) for c in range(x.shape[1])], axis=1)
    if x.ndim == 2 and ir.ndim == 2:
        if x.shape[1] != ir.shape[1]:
            raise ValueError("channel count mismatch between signal and impulse response")
        return np.stack([convolve(x[:, c], ir[:, c]) for c in range(x.shape[1])], axis=1)
    raise ValueError("unsupported signal/impulse-response shapes")


@dataclass(frozen=True)
class CompressorSpec:
    """Static-curve dynamics compressor with one-pole attack/release ballistics."""

    threshold_db: float
    knee_db: float
    ratio: float
    attack: float
    release: float

    def __post_init__(self):
        if self.ratio < 1:
            raise ValueError(f"ratio must be >= 1, got {self.ratio}")
        if self.knee_db < 0:
            raise ValueError(f"knee must be >= 0 dB, got {self.knee_db}")
        if self.attack < 0 or self.release < 0:
            raise ValueError("attack and release must be >= 0 seconds")


def compressor_static_db(level_db, spec: CompressorSpec):
    """Steady-state output level (dB) for an input level (dB).

    Identity below the knee, slope 1/ratio above it, and a quadratic
    gain-reduction curve across the knee centered on the threshold. The
    curve is continuous, has matching slopes at both knee boundaries, and is
    monotone for every ratio >= 1.
    """
    level_db = np.asarray(level_db, dtype=np.float64)
    t, k, ratio = spec.threshold_db, spec.knee_db, spec.ratio
    slope_drop = 1.0 - 1.0 / ratio
    over = level_db - t
    if k > 0:
        knee_rise = level_db - (t - k / 2.0)
        reduction = np.where(
            knee_rise <= 0.0,
            0.0,
            np.where(
                over >= k / 2.0,
                slope_drop * over,
                slope_drop * knee_rise**2 / (2.0 * k),
            ),
        )
    else:
        reduction = np.where(over <= 0.0, 0.0, slope_drop * over)
    out = level_db - reduction
    return float(out) if out.ndim == 0 else out


def _smoothing_coeff(seconds: float, sample_rate: int) -> float:
    if seconds <= 0:
        return 0.0
    return math.exp(-1.0 / (seconds * sample_rate))


def compress(x: np.ndarray, spec: CompressorSpec, sample_rate: int = SAMPLE_RATE) -> np.ndarray:
    """Apply the compressor at unity make-up gain.

    Stereo input is detected channel-linked on the per-sample peak. Gain
    moves instantly when attack is 0 and relaxes with the release time
    constant otherwise.
    """
    x = np.asarray(x, dtype=np.float64)
    level = np.abs(x) if x.ndim == 1 else np.max(np.abs(x), axis=1)
    level_db = 20.0 * np.log10(np.maximum(level, 1e-10))
    target_gain = 10.0 ** ((compressor_static_db(level_db, spec) - level_db) / 20.0)
    gain = backends.kernels.gain_follower(
        np.ascontiguousarray(target_gain),
        _smoothing_coeff(spec.attack, sample_rate),
        _smoothing_coeff(spec.release, sample_rate),
    )
    return x * gain if x.ndim == 1 else x * gain[:, None]


def synthesize_beach_ir(
    seed: int,
    rt60: float = 2.5,
    length: float = 3.0,
    sample_rate: int = SAMPLE_RATE,
) -> np.ndarray:
    """Synthetic shoreline-style stereo impulse response.

    A unit direct spike followed by exponentially decaying noise whose
    backward-integrated energy falls 60 dB at ``rt60``, tilted dark with a
    gentle 4 kHz lowpass, peak-normalized to 0.5. Deterministic in the seed.
    """
    n = int(round(length * sample_rate))
    t = np.arange(n) / sample_rate
    envelope = 10.0 ** (-3.0 * t / rt60)
    stream = noise_stream(seed, "beach-ir")
    channels = []
    for _ in range(2):
        bed = stream.uniform(-1.0, 1.0, n) * envelope * 0.5
        bed = biquad_filter(bed, "lowpass", 4000.0, DEFAULT_Q, sample_rate)
        bed[0] = 1.0  # clean direct sound arrives first and loudest
        channels.append(bed)
    ir = np.stack(channels, axis=1)
    return ir * (0.5 / np.max(np.abs(ir)))
