"""Two-pole recursive filters with optional control-block cutoff ramps.

Coefficients come from the standard second-order analog prototypes
(lowpass / highpass / constant-peak-gain bandpass) discretized with the
bilinear transform, so DC gain is 1 for lowpass, Nyquist-side gain is 1 for
highpass, and the bandpass peaks at exactly 1 at its center frequency.
"""

from dataclasses import dataclass, field

import numpy as np

from .. import backends
from ..constants import CONTROL_BLOCK_SAMPLES, CUTOFF_FLOOR_HZ, SAMPLE_RATE

KIND_LOWPASS = "lowpass"
KIND_HIGHPASS = "highpass"
KIND_BANDPASS = "bandpass"
KINDS = (KIND_LOWPASS, KIND_HIGHPASS, KIND_BANDPASS)

DEFAULT_Q = 1.0 / np.sqrt(2.0)


def clamp_cutoff(f, sample_rate: int = SAMPLE_RATE):
    """Clamp a cutoff (scalar or array) into the usable [floor, 0.49*fs] range."""
    return np.clip(f, CUTOFF_FLOOR_HZ, 0.49 * sample_rate)


def design_biquad(kind: str, f, q: float, sample_rate: int = SAMPLE_RATE) -> np.ndarray:
    """Coefficient rows [b0, b1, b2, a1, a2] (a0 normalized out).

    ``f`` may be a scalar or an array of cutoffs; one row per cutoff.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown filter kind {kind!r}")
    if q <= 0:
        raise ValueError(f"Q must be > 0, got {q}")
    f = np.atleast_1d(np.asarray(f, dtype=np.float64))
    if np.any(f <= 0) or np.any(f >= sample_rate / 2):
        raise ValueError("cutoff must lie inside (0, sample_rate/2)")
    w0 = 2.0 * np.pi * f / sample_rate
    cw = np.cos(w0)
    sw = np.sin(w0)
    alpha = sw / (2.0 * q)
    a0 = 1.0 + alpha
    if kind == KIND_LOWPASS:
        b0 = (1.0 - cw) / 2.0
        b1 = 1.0 - cw
        b2 = b0
    elif kind == KIND_HIGHPASS:
        b0 = (1.0 + cw) / 2.0
        b1 = -(1.0 + cw)
        b2 = b0
    else:
        b0 = alpha
        b1 = np.zeros_like(alpha)
        b2 = -alpha
    rows = np.stack([b0, b1, b2, -2.0 * cw, 1.0 - alpha], axis=1)
    rows /= a0[:, None]
    return rows


@dataclass(frozen=True)
class BiquadSpec:
    """Filter kind, center/cutoff frequency and quality factor."""

    kind: str
    f: float
    q: float
    sample_rate: int = SAMPLE_RATE

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown filter kind {self.kind!r}")
        if not 0 < self.f < self.sample_rate / 2:
            raise ValueError(
                f"cutoff must lie inside (0, {self.sample_rate / 2}), got {self.f}"
            )
        if self.q <= 0:
            raise ValueError(f"Q must be > 0, got {self.q}")

    def coefficients(self) -> np.ndarray:
        return design_biquad(self.kind, self.f, self.q, self.sample_rate)


@dataclass
class Biquad:
    """A BiquadSpec plus its running two-pole state; processes in one call
    or incrementally across calls."""

    spec: BiquadSpec
    state: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def process(self, x: np.ndarray) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=np.float64)
        coeffs = self.spec.coefficients()
        y = backends.kernels.biquad_blocks(x, coeffs, max(len(x), 1), self.state)
        self._advance(coeffs[0], x, y)
        return y

    def _advance(self, row, x, y):
        # Recompute the final DF2T state from the last two in/out samples.
        z1, z2 = self.state
        b0, b1, b2, a1, a2 = row
        for xi, yi in zip(x[-2:], y[-2:]):
            z1_new = (b1 * xi + z2) - a1 * yi
            z2 = b2 * xi - a2 * yi
            z1 = z1_new
        self.state = np.array([z1, z2])

    def reset(self) -> None:
        self.state = np.zeros(2)


def biquad_filter(
    x: np.ndarray, kind: str, f: float, q: float, sample_rate: int = SAMPLE_RATE
) -> np.ndarray:
    """One-shot static filtering from zero initial state."""
    return Biquad(BiquadSpec(kind, f, q, sample_rate)).process(x)


def _block_index(t: float, sample_rate: int, block: int) -> int:
    return int(np.floor(t * sample_rate / block))


def effective_cutoff(
    f_start: float,
    f_end: float,
    period,
    t: float,
    sample_rate: int = SAMPLE_RATE,
    block: int = CONTROL_BLOCK_SAMPLES,
) -> float:
    """Cutoff in effect at time t: the linear ramp across the period,
    sampled at control-block starts and clamped to the usable range."""
    d0, d1 = float(period[0]), float(period[1])
    if f_start == f_end:
        return float(clamp_cutoff(f_start, sample_rate))
    t_block = _block_index(t, sample_rate, block) * block / sample_rate
    u = min(max((t_block - d0) / (d1 - d0), 0.0), 1.0)
    return float(clamp_cutoff(f_start * (1.0 - u) + f_end * u, sample_rate))


def cutoff_schedule(
    f_start: float,
    f_end: float,
    period,
    n: int,
    t0: float = 0.0,
    sample_rate: int = SAMPLE_RATE,
    block: int = CONTROL_BLOCK_SAMPLES,
) -> np.ndarray:
    """Per-block clamped cutoffs for an n-sample run starting at time t0."""
    d0, d1 = float(period[0]), float(period[1])
    n_blocks = max(1, -(-n // block))
    if f_start == f_end:
        return clamp_cutoff(np.full(n_blocks, f_start), sample_rate)
    t = t0 + np.arange(n_blocks) * (block / sample_rate)
    u = np.clip((t - d0) / (d1 - d0), 0.0, 1.0)
    return clamp_cutoff(f_start * (1.0 - u) + f_end * u, sample_rate)


def biquad_ramped(
    x: np.ndarray,
    kind: str,
    q: float,
    f_start: float,
    f_end: float,
    period,
    t0: float = 0.0,
    sample_rate: int = SAMPLE_RATE,
    block: int = CONTROL_BLOCK_SAMPLES,
) -> np.ndarray:
    """Filter x with a cutoff ramping linearly across the period.

    Coefficients are recomputed once per control block; x[0] is taken to
    sit at absolute time t0.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    if len(x) == 0:
        return x.copy()
    cutoffs = cutoff_schedule(f_start, f_end, period, len(x), t0, sample_rate, block)
    coeffs = design_biquad(kind, cutoffs, q, sample_rate)
    return backends.kernels.biquad_blocks(x, coeffs, block, np.zeros(2))
