"""Gain trajectories.

Two laws: a plain linear ramp, and an undulating exponential decay (for the
long rumble-style tails) built from a seeded sub-2 Hz oscillation on top of
the base decay.
"""

from dataclasses import dataclass

import numpy as np

from ..constants import EPSILON
from .noise import noise_stream

UNDULATION_DEPTH = 0.3
UNDULATION_BAND_HZ = (0.2, 1.5)
_UNDULATION_COMPONENTS = 3

LAW_LINEAR = "linear"
LAW_UNDULATING = "undulating"


def _check_period(period) -> tuple[float, float]:
    d0, d1 = float(period[0]), float(period[1])
    if d0 < 0:
        raise ValueError(f"period start must be >= 0, got {d0}")
    if not d1 > d0:
        raise ValueError(f"period end must exceed start, got [{d0}, {d1}]")
    return d0, d1


def _as_result(values, scalar_input: bool):
    return float(values) if scalar_input else values


def ramp_linear(start: float, end: float, period, t):
    """Affine interpolation from start to end across the period.

    Exactly ``start`` at the period onset and ``end`` at its close; times
    outside the period clamp to the nearest endpoint. ``t`` may be a scalar
    or an array.
    """
    d0, d1 = _check_period(period)
    scalar = np.ndim(t) == 0
    t_arr = np.asarray(t, dtype=np.float64)
    if start == end:
        return _as_result(np.full_like(t_arr, start), scalar)
    u = np.clip((t_arr - d0) / (d1 - d0), 0.0, 1.0)
    # complementary weights hit both endpoints exactly
    return _as_result(start * (1.0 - u) + end * u, scalar)


@dataclass(frozen=True)
class UndulationLfo:
    """Seeded smooth oscillation, |value| <= 1, content inside the 0.2-1.5 Hz band."""

    freqs: tuple
    phases: tuple

    @classmethod
    def from_seed(cls, seed: int) -> "UndulationLfo":
        stream = noise_stream(seed, "undulation")
        lo, hi = UNDULATION_BAND_HZ
        freqs = stream.uniform(lo, hi, _UNDULATION_COMPONENTS)
        phases = stream.uniform(0.0, 2.0 * np.pi, _UNDULATION_COMPONENTS)
        return cls(freqs=tuple(freqs), phases=tuple(phases))

    def value(self, t):
        t = np.asarray(t, dtype=np.float64)
        acc = np.zeros_like(t)
        for f, p in zip(self.freqs, self.phases):
            acc = acc + np.sin(2.0 * np.pi * f * t + p)
        return acc / len(self.freqs)


def ramp_undulating(start, end, period, t, seed, depth=UNDULATION_DEPTH):
    """Undulating decay from start to end across the period.

    Base curve is an exponential decay; it is modulated by
    (1 + depth * lfo(t)) with a seeded low-frequency oscillation, so for a
    decaying ramp the output stays within [0, (1 + depth) * start]. A zero
    ``end`` decays toward EPSILON and lands exactly on 0 at the period close;
    a zero ``start`` produces an identically zero trajectory. At and after
    the period close the value is exactly ``end``.
    """
    if start < 0 or end < 0:
        raise ValueError("gains must be >= 0")
    d0, d1 = _check_period(period)
    scalar = np.ndim(t) == 0
    t_arr = np.asarray(t, dtype=np.float64)
    if start == 0.0:
        return _as_result(np.zeros_like(t_arr), scalar)
    u = np.clip((t_arr - d0) / (d1 - d0), 0.0, 1.0)
    decay_to = end if end > 0 else EPSILON
    base = start * (decay_to / start) ** u
    values = base * (1.0 + depth * UndulationLfo.from_seed(seed).value(t_arr))
    values = np.where(u >= 1.0, end, values)
    return _as_result(np.maximum(values, 0.0), scalar)


@dataclass(frozen=True)
class Envelope:
    """A gain trajectory over a [start, end] period under one of the two laws."""

    start_gain: float
    end_gain: float
    period: tuple
    law: str = LAW_LINEAR
    seed: int | None = None
    depth: float = UNDULATION_DEPTH

    def __post_init__(self):
        _check_period(self.period)
        if self.start_gain < 0 or self.end_gain < 0:
            raise ValueError("envelope gains must be >= 0")
        if self.law not in (LAW_LINEAR, LAW_UNDULATING):
            raise ValueError(f"unknown envelope law {self.law!r}")
        if self.law == LAW_UNDULATING and self.seed is None:
            raise ValueError("undulating envelopes require a seed")

    @property
    def terminal(self) -> float:
        return self.end_gain

    def at(self, t):
        if self.law == LAW_LINEAR:
            return ramp_linear(self.start_gain, self.end_gain, self.period, t)
        return ramp_undulating(
            self.start_gain, self.end_gain, self.period, t, self.seed, self.depth
        )
