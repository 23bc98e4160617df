"""Sample-accurate DSP primitives shared by every generator."""

from .noise import derive_seed, noise_stream, white_noise
from .ramps import EPSILON, Envelope, ramp_linear, ramp_undulating
from .biquad import (
    Biquad,
    BiquadSpec,
    biquad_filter,
    biquad_ramped,
    clamp_cutoff,
    cutoff_schedule,
    design_biquad,
    effective_cutoff,
)
from .ops import Phasor, clip, convolve, half_rectify, sample_and_hold

__all__ = [
    "Biquad",
    "BiquadSpec",
    "Envelope",
    "EPSILON",
    "Phasor",
    "biquad_filter",
    "biquad_ramped",
    "clamp_cutoff",
    "clip",
    "convolve",
    "cutoff_schedule",
    "derive_seed",
    "design_biquad",
    "effective_cutoff",
    "half_rectify",
    "noise_stream",
    "ramp_linear",
    "ramp_undulating",
    "sample_and_hold",
    "white_noise",
]
