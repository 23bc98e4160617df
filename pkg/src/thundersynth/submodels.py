"""The four signal generators: multi-strike lightning, rumbler, afterimage
and deepener.

Each build_* function is a pure function of (params, seed): it returns a
mono float64 buffer covering the whole render timeline, exactly zero before
the distance onset. Noise is drawn from named child streams of the master
seed so the sub-models are independent and the whole render is replayable.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import (
    CONTROL_BLOCK_SAMPLES,
    EPSILON,
    RENDER_TAIL_SECONDS,
    SAMPLE_RATE,
    SPEED_OF_SOUND_M_S,
)
from .dsp.biquad import DEFAULT_Q, biquad_filter, biquad_ramped
from .dsp.noise import borrow_stream, derive_seed, white_noise
from .dsp.ops import Phasor, clip, half_rectify, sample_and_hold
from .dsp.ramps import LAW_LINEAR, LAW_UNDULATING, Envelope
from .params import ThunderParams
from .postfx import reverb, synthesize_beach_ir
from .presets import PresetConstants, get_preset

# Strike section
STRIKE_COUNT_RANGE = (1, 5)
STRIKE_ENVELOPE_COUNT = 4
STRIKE_IMPULSE_COUNT = 20
STRIKE_GAIN_SCALE = 2.0
STRIKE_DURATION_SCALE_MS = 240.0
STRIKE_DURATION_POWER = 5
STRIKE_CENTER_SLOPE_HZ = 1200.0
STRIKE_CENTER_BASE_HZ = 100.0
SPLIT_PROBABILITY = 0.25
SPLIT_GAIN = 0.7
SPLIT_OFFSET_RANGE_S = (0.010, 0.080)

# Rumbler section
RUMBLER_GAIN_SCALE = 2.5
RUMBLER_ENVELOPE_SECONDS = 9.0
RUMBLER_CUTOFF_SECONDS = 12.0
RUMBLER_CUTOFF_START_HZ = 1000.0
RUMBLER_SELFMOD_LP_HZ = 10.0

# Afterimage section
AFTERIMAGE_GAIN_SCALE = 2.0
AFTERIMAGE_ENVELOPE_SECONDS = 14.0
AFTERIMAGE_DRIVE = 80.0
AFTERIMAGE_BP_HZ = 333.0
AFTERIMAGE_BP_Q = 4.0
AFTERIMAGE_LP_START_HZ = 33.0

# Deepener section
DEEPENER_GAIN_SCALE = 6.0
DEEPENER_ENVELOPE_SECONDS = 18.5
DEEPENER_DRIVE = 3.5
DEEPENER_LP1_HZ = 60.0
DEEPENER_LP2_HZ = 80.0
DEEPENER_Q = 3.0


@dataclass(frozen=True)
class SplitEntry:
    """A secondary strike branch superposed onto its parent."""

    r: float
    offset: float
    onset_times: np.ndarray | None


@dataclass(frozen=True)
class StrikeEntry:
    ordinal: int
    impulse_source: bool
    r: float
    envelope_index: int
    onset_times: np.ndarray | None
    split: SplitEntry | None


@dataclass(frozen=True)
class StrikePlan:
    """Every random draw needed to replay a multi-strike render."""

    seed: int
    strikes: tuple

    @property
    def strike_count(self) -> int:
        return len(self.strikes)


def _open_unit(value: float) -> float:
    # uniform() covers [0, 1); nudge the measure-zero 0.0 draw inside.
    return value if value != 0.0 else float(np.nextafter(0.0, 1.0))


def _draw_onsets(stream: np.random.Generator) -> np.ndarray:
    return stream.uniform(0.0, 1.0, STRIKE_IMPULSE_COUNT) + EPSILON


def plan_strikes(seed: int) -> StrikePlan:
    """Draw the strike count, per-strike parameters and split branches.

    The strike count is uniform on {1..5}; odd ordinals use the impulse
    source, even ordinals white noise; each strike gets envelope
    ((ordinal - 1) mod 4) + 1 and triggers a split branch with probability
    SPLIT_PROBABILITY. Per-strike scalars come from one block draw so the
    stream layout stays fixed regardless of which branches trigger.
    """
    stream = borrow_stream(seed, "strike.plan")
    count = int(stream.integers(STRIKE_COUNT_RANGE[0], STRIKE_COUNT_RANGE[1] + 1))
    # Columns: r, split coin, split r, split offset position.
    draws = stream.uniform(size=(count, 4))
    lo_off, hi_off = SPLIT_OFFSET_RANGE_S
    strikes = []
    for ordinal in range(1, count + 1):
        row = draws[ordinal - 1]
        impulse = ordinal % 2 == 1
        onsets = _draw_onsets(stream) if impulse else None
        split = None
        if row[1] < SPLIT_PROBABILITY:
            split = SplitEntry(
                r=_open_unit(float(row[2])),
                offset=lo_off + float(row[3]) * (hi_off - lo_off),
                onset_times=_draw_onsets(stream) if impulse else None,
            )
        strikes.append(
            StrikeEntry(
                ordinal=ordinal,
                impulse_source=impulse,
                r=_open_unit(float(row[0])),
                envelope_index=(ordinal - 1) % STRIKE_ENVELOPE_COUNT + 1,
                onset_times=onsets,
                split=split,
            )
        )
    return StrikePlan(seed=seed, strikes=tuple(strikes))


def strike_duration(r: float) -> float:
    """Envelope length in seconds for a strike draw r in (0, 1).

    240 * (1.4 - r)^5 milliseconds: bounded in (2.45, 1290.8) ms and heavily
    skewed toward short claps.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie strictly inside (0, 1), got {r}")
    return STRIKE_DURATION_SCALE_MS * (1.4 - r) ** STRIKE_DURATION_POWER / 1000.0


def strike_end_time(d: float, r: float) -> float:
    """Absolute envelope close time for a strike starting at d."""
    return d + strike_duration(r)


def strike_source(
    impulse: bool,
    onset_times,
    n_samples: int,
    seed: int,
    stream: str,
    sample_rate: int = SAMPLE_RATE,
) -> np.ndarray:
    """Source buffer for one strike: white noise, or unit spikes at the onsets.

    Spike positions are quantized to samples; a collision moves to the next
    free sample so the buffer always carries exactly one spike per onset.
    """
    if impulse:
        buf = np.zeros(n_samples)
        for onset in onset_times:
            idx = int(round(onset * sample_rate))
            while idx < n_samples and buf[idx] != 0.0:
                idx += 1
            if idx >= n_samples:
                raise ValueError("source buffer too short for the spike onsets")
            buf[idx] = 1.0
        return buf
    return white_noise(seed, n_samples, stream)


def strike_center_hz(r: float, preset: PresetConstants) -> float:
    """Initial band-pass center for a strike draw r."""
    return STRIKE_CENTER_SLOPE_HZ * r + STRIKE_CENTER_BASE_HZ + preset.strike_center_offset_hz


def strike_filter_pair(
    x: np.ndarray,
    r: float,
    preset: PresetConstants,
    period,
    sample_rate: int = SAMPLE_RATE,
) -> np.ndarray:
    """Two band-pass filters in series, centers ramping to half their start."""
    center = strike_center_hz(r, preset)
    for _ in range(2):
        x = biquad_ramped(
            x,
            "bandpass",
            preset.strike_q,
            center,
            center / 2.0,
            period,
            t0=0.0,
            sample_rate=sample_rate,
        )
    return x


def _strike_branch(
    r: float,
    impulse: bool,
    onset_times,
    initial_strike: float,
    preset: PresetConstants,
    seed: int,
    stream: str,
    sample_rate: int,
) -> np.ndarray:
    """Render one strike (or split branch) in segment-local time."""
    duration = strike_duration(r)
    source_seconds = max(1.0 + 2.0 * EPSILON, duration)
    n = int(math.ceil(source_seconds * sample_rate)) + CONTROL_BLOCK_SAMPLES
    x = strike_source(impulse, onset_times, n, seed, stream, sample_rate)
    x = strike_filter_pair(x, r, preset, (0.0, duration), sample_rate)
    envelope = Envelope(
        start_gain=initial_strike * STRIKE_GAIN_SCALE,
        end_gain=0.0,
        period=(0.0, duration),
        law=LAW_LINEAR,
    )
    t = np.arange(n) / sample_rate
    return x * envelope.at(t)


def _mix_at(out: np.ndarray, segment: np.ndarray, offset: int) -> None:
    stop = min(offset + len(segment), len(out))
    if stop > offset:
        out[offset:stop] += segment[: stop - offset]


def _timeline(params: ThunderParams, n_total, sample_rate, speed_of_sound):
    d = params.onset_delay(speed_of_sound)
    if n_total is None:
        n_total = int(round((d + RENDER_TAIL_SECONDS) * sample_rate))
    onset = int(round(d * sample_rate))
    return d, n_total, onset


def build_multistrike(
    params: ThunderParams,
    seed: int,
    preset: PresetConstants | None = None,
    n_total: int | None = None,
    include_reverb: bool | None = None,
    ir: np.ndarray | None = None,
    sample_rate: int = SAMPLE_RATE,
    speed_of_sound: float = SPEED_OF_SOUND_M_S,
) -> np.ndarray:
    """Render the multi-strike generator onto the full timeline.

    Every strike onsets at the distance delay; split branches land
    10-80 ms later at SPLIT_GAIN. With reverb enabled the summed strikes are
    convolved with the shoreline impulse response (pass include_reverb=False
    to defer that stage to an outer chain).
    """
    preset = preset or get_preset(params.preset)
    d, n_total, onset = _timeline(params, n_total, sample_rate, speed_of_sound)
    out = np.zeros(n_total)
    plan = plan_strikes(seed)
    for entry in plan.strikes:
        label = f"strike.{entry.ordinal}"
        segment = _strike_branch(
            entry.r,
            entry.impulse_source,
            entry.onset_times,
            params.initial_strike,
            preset,
            seed,
            f"{label}.noise",
            sample_rate,
        )
        _mix_at(out, segment, onset)
        if entry.split is not None:
            branch = _strike_branch(
                entry.split.r,
                entry.impulse_source,
                entry.split.onset_times,
                params.initial_strike,
                preset,
                seed,
                f"{label}.split.noise",
                sample_rate,
            )
            _mix_at(out, branch * SPLIT_GAIN, onset + int(round(entry.split.offset * sample_rate)))
    if include_reverb is None:
        include_reverb = params.reverb
    if include_reverb:
        if ir is None:
            ir = synthesize_beach_ir(derive_seed(seed, "beach-ir"), sample_rate=sample_rate)
        mono_ir = ir if ir.ndim == 1 else ir.mean(axis=1)
        out = reverb(out, mono_ir)[:n_total]
    return out


def build_rumbler(
    params: ThunderParams,
    seed: int,
    preset: PresetConstants | None = None,
    n_total: int | None = None,
    sample_rate: int = SAMPLE_RATE,
    speed_of_sound: float = SPEED_OF_SOUND_M_S,
    return_parts: bool = False,
):
    """Render the rumbler: rectified filtered noise plus a phasor-clocked
    sample-and-hold branch, both under the undulating decay.

    The envelope gain also sets the capture rate: the phasor runs at
    gain + 1 Hz, so captures slow down as the rumble dies. The held branch
    is amplitude-modulated by a slowed copy of itself before the equal mix.
    """
    d, n_total, onset = _timeline(params, n_total, sample_rate, speed_of_sound)
    n_seg = n_total - onset
    t = d + np.arange(n_seg) / sample_rate
    envelope = Envelope(
        start_gain=params.rumble * RUMBLER_GAIN_SCALE,
        end_gain=EPSILON,
        period=(d, d + RUMBLER_ENVELOPE_SECONDS),
        law=LAW_UNDULATING,
        seed=derive_seed(seed, "rumbler.envelope"),
    )
    gain = envelope.at(t)
    cutoff_period = (d, d + RUMBLER_CUTOFF_SECONDS)

    noise_main = white_noise(seed, n_seg, "rumbler.noise.main")
    rectified = half_rectify(
        biquad_ramped(
            noise_main, "lowpass", DEFAULT_Q, RUMBLER_CUTOFF_START_HZ, 0.0, cutoff_period,
            t0=d, sample_rate=sample_rate,
        )
    )

    noise_held = white_noise(seed, n_seg, "rumbler.noise.held")
    filtered_held = biquad_ramped(
        noise_held, "lowpass", DEFAULT_Q, RUMBLER_CUTOFF_START_HZ, 0.0, cutoff_period,
        t0=d, sample_rate=sample_rate,
    )
    trigger = Phasor(sample_rate=sample_rate).run(gain + 1.0)
    held = sample_and_hold(filtered_held, trigger)
    slow = biquad_filter(held, "lowpass", RUMBLER_SELFMOD_LP_HZ, DEFAULT_Q, sample_rate)
    held_scaled = held * (0.5 + 0.5 * np.abs(slow))

    segment = gain * 0.5 * (rectified + held_scaled)
    out = np.zeros(n_total)
    out[onset:] = segment
    if return_parts:
        parts = {
            "envelope": envelope,
            "gain": gain,
            "trigger": trigger,
            "rectified": rectified,
            "held": held,
            "held_scaled": held_scaled,
        }
        return out, parts
    return out


def build_afterimage(
    params: ThunderParams,
    seed: int,
    preset: PresetConstants | None = None,
    n_total: int | None = None,
    sample_rate: int = SAMPLE_RATE,
    speed_of_sound: float = SPEED_OF_SOUND_M_S,
    return_parts: bool = False,
):
    """Render the afterimage: slow filtered noise driven hot into a second
    noise source, clipped, then band-passed around 333 Hz.

    Intensity follows the strike parameter so a silent strike also silences
    its echo. The v2 preset scales the whole sub-model by 0.4.
    """
    preset = preset or get_preset(params.preset)
    d, n_total, onset = _timeline(params, n_total, sample_rate, speed_of_sound)
    n_seg = n_total - onset
    t = d + np.arange(n_seg) / sample_rate
    period = (d, d + AFTERIMAGE_ENVELOPE_SECONDS)
    envelope = Envelope(
        start_gain=params.initial_strike * AFTERIMAGE_GAIN_SCALE,
        end_gain=EPSILON,
        period=period,
        law=LAW_UNDULATING,
        seed=derive_seed(seed, "afterimage.envelope"),
    )
    noise_slow = white_noise(seed, n_seg, "afterimage.noise.slow")
    noise_mod = white_noise(seed, n_seg, "afterimage.noise.mod")
    slow = biquad_ramped(
        noise_slow, "lowpass", DEFAULT_Q, AFTERIMAGE_LP_START_HZ, 0.0, period,
        t0=d, sample_rate=sample_rate,
    )
    intermediate = clip(slow * AFTERIMAGE_DRIVE * noise_mod)
    shaped = biquad_filter(intermediate, "bandpass", AFTERIMAGE_BP_HZ, AFTERIMAGE_BP_Q, sample_rate)
    segment = shaped * envelope.at(t) * preset.afterimage_gain
    out = np.zeros(n_total)
    out[onset:] = segment
    if return_parts:
        return out, {"envelope": envelope, "intermediate": intermediate}
    return out


def build_deepener(
    params: ThunderParams,
    seed: int,
    preset: PresetConstants | None = None,
    n_total: int | None = None,
    sample_rate: int = SAMPLE_RATE,
    speed_of_sound: float = SPEED_OF_SOUND_M_S,
    return_parts: bool = False,
):
    """Render the deepener: noise narrowed to the 15/30-80 Hz band, driven
    and clipped for density, smoothed by a final lowpass."""
    preset = preset or get_preset(params.preset)
    d, n_total, onset = _timeline(params, n_total, sample_rate, speed_of_sound)
    n_seg = n_total - onset
    t = d + np.arange(n_seg) / sample_rate
    envelope = Envelope(
        start_gain=params.growl * DEEPENER_GAIN_SCALE,
        end_gain=0.0,
        period=(d, d + DEEPENER_ENVELOPE_SECONDS),
        law=LAW_UNDULATING,
        seed=derive_seed(seed, "deepener.envelope"),
    )
    noise = white_noise(seed, n_seg, "deepener.noise")
    x = biquad_filter(noise, "lowpass", DEEPENER_LP1_HZ, DEEPENER_Q, sample_rate)
    x = biquad_filter(x, "highpass", preset.deepener_hp_hz, DEEPENER_Q, sample_rate)
    x = clip(x * DEEPENER_DRIVE)
    x = biquad_filter(x, "lowpass", DEEPENER_LP2_HZ, DEEPENER_Q, sample_rate)
    segment = x * envelope.at(t)
    out = np.zeros(n_total)
    out[onset:] = segment
    if return_parts:
        return out, {"envelope": envelope}
    return out
