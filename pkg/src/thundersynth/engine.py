"""Render graph assembly: sub-models, post-FX, stereo mix, WAV output and
analysis utilities."""

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import (
    EPSILON,
    RENDER_TAIL_SECONDS,
    SAMPLE_RATE,
    SPEED_OF_SOUND_M_S,
)
from .dsp.noise import derive_seed, noise_stream
from .dsp.ops import clip
from .params import ThunderParams
from .postfx import (
    PAN_RANGE_DEG,
    FeedbackSpec,
    PanSpec,
    feedback_delay,
    linear_to_db,
    pan,
    reverb,
    synthesize_beach_ir,
)
from .presets import PresetConstants, get_preset
from .submodels import (
    AFTERIMAGE_ENVELOPE_SECONDS,
    DEEPENER_ENVELOPE_SECONDS,
    RUMBLER_CUTOFF_SECONDS,
    RUMBLER_ENVELOPE_SECONDS,
    build_afterimage,
    build_deepener,
    build_multistrike,
    build_rumbler,
)
from .wavio import encode_wav, write_wav

SUBMODEL_NAMES = ("strike", "rumbler", "afterimage", "deepener")

STRIKE_FEEDBACK = FeedbackSpec(delay_time=0.6, feedback=0.15)
SPREAD_DELAY_RANGE_S = (0.005, 0.030)

ONSET_THRESHOLD_DBFS = -80.0

ANALYSIS_BANDS_HZ = (200.0, 1300.0)
ANALYSIS_HOP_SECONDS = 0.1


@dataclass(frozen=True)
class Signal:
    """A finite buffer of audio samples at a fixed rate."""

    samples: np.ndarray
    sample_rate: int = SAMPLE_RATE

    @property
    def channels(self) -> int:
        return 1 if self.samples.ndim == 1 else self.samples.shape[1]

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate

    def mono(self) -> np.ndarray:
        return self.samples if self.samples.ndim == 1 else self.samples.mean(axis=1)


@dataclass(frozen=True)
class RenderConfig:
    """Fixed-rate render settings; the sample rate is pinned to 44100."""

    seed: int = 0
    sample_rate: int = SAMPLE_RATE
    speed_of_sound: float = SPEED_OF_SOUND_M_S
    epsilon: float = EPSILON
    bit_depth: str = "float32"
    tail_seconds: float = RENDER_TAIL_SECONDS
    ir_path: str | None = None

    def __post_init__(self):
        if self.sample_rate != SAMPLE_RATE:
            raise ValueError(f"sample_rate is fixed at {SAMPLE_RATE}")
        if self.tail_seconds <= DEEPENER_ENVELOPE_SECONDS:
            raise ValueError(
                f"tail_seconds must exceed {DEEPENER_ENVELOPE_SECONDS} so every envelope closes"
            )
        if self.speed_of_sound <= 0:
            raise ValueError("speed_of_sound must be positive")


@dataclass
class RenderReport:
    """What a render did: parameters, per-sub-model levels and onsets."""

    seed: int
    preset: str
    distance: float
    initial_strike: float
    rumble: float
    growl: float
    reverb: bool
    duration_seconds: float
    sample_rate: int
    bit_depth: str
    onset_delay_seconds: float
    peak_dbfs: float
    submodel_peaks_dbfs: dict = field(default_factory=dict)
    submodel_onsets_seconds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "preset": self.preset,
            "distance": self.distance,
            "initial_strike": self.initial_strike,
            "rumble": self.rumble,
            "growl": self.growl,
            "reverb": self.reverb,
            "duration_seconds": self.duration_seconds,
            "sample_rate": self.sample_rate,
            "bit_depth": self.bit_depth,
            "onset_delay_seconds": self.onset_delay_seconds,
            "peak_dbfs": self.peak_dbfs,
            "submodel_peaks_dbfs": dict(self.submodel_peaks_dbfs),
            "submodel_onsets_seconds": dict(self.submodel_onsets_seconds),
        }

    def to_text(self) -> str:
        lines = [
            f"seed: {self.seed}",
            f"preset: {self.preset}",
            f"distance: {self.distance:g}",
            f"initial_strike: {self.initial_strike:g}",
            f"rumble: {self.rumble:g}",
            f"growl: {self.growl:g}",
            f"reverb: {'on' if self.reverb else 'off'}",
            f"duration_seconds: {self.duration_seconds:.6f}",
            f"sample_rate: {self.sample_rate}",
            f"bit_depth: {self.bit_depth}",
            f"onset_delay_seconds: {self.onset_delay_seconds:.6f}",
            f"peak_dbfs: {self.peak_dbfs:.2f}",
        ]
        for name in SUBMODEL_NAMES:
            peak = self.submodel_peaks_dbfs.get(name)
            onset = self.submodel_onsets_seconds.get(name)
            onset_text = "none" if onset is None else f"{onset:.6f}"
            lines.append(f"submodel.{name}.peak_dbfs: {peak:.2f}")
            lines.append(f"submodel.{name}.onset_seconds: {onset_text}")
        return "\n".join(lines)


def _first_nonzero_seconds(x: np.ndarray, sample_rate: int) -> float | None:
    flat = np.abs(x) if x.ndim == 1 else np.max(np.abs(x), axis=1)
    mask = flat > 0.0
    if not mask.any():
        return None
    return float(int(np.argmax(mask)) / sample_rate)


def _peak_dbfs(x: np.ndarray) -> float:
    return linear_to_db(float(np.max(np.abs(x))) if len(x) else 0.0)


def describe_graph(params: ThunderParams, config: RenderConfig | None = None) -> dict:
    """Structured description of the graph a render would build.

    The renderer derives its constants from the same presets, so comparing
    two descriptions shows exactly what a preset switch changes.
    """
    config = config or RenderConfig()
    preset = get_preset(params.preset)
    d = params.onset_delay(config.speed_of_sound)
    return {
        "preset": preset.name,
        "onset_delay_seconds": d,
        "strike": {
            "bandpass_q": preset.strike_q,
            "center_offset_hz": preset.strike_center_offset_hz,
            "envelope": {"law": "linear", "period": (d, None), "terminal": 0.0},
            "feedback": {
                "delay_time": STRIKE_FEEDBACK.delay_time,
                "feedback": STRIKE_FEEDBACK.feedback,
            },
            "reverb": params.reverb,
        },
        "rumbler": {
            "envelope": {
                "law": "undulating",
                "period": (d, d + RUMBLER_ENVELOPE_SECONDS),
                "terminal": config.epsilon,
            },
            "cutoff_ramp": {"period": (d, d + RUMBLER_CUTOFF_SECONDS), "from_hz": 1000.0},
        },
        "afterimage": {
            "gain": preset.afterimage_gain,
            "bandpass": {"f": 333.0, "q": 4.0},
            "envelope": {
                "law": "undulating",
                "period": (d, d + AFTERIMAGE_ENVELOPE_SECONDS),
                "terminal": config.epsilon,
            },
        },
        "deepener": {
            "highpass_hz": preset.deepener_hp_hz,
            "envelope": {
                "law": "undulating",
                "period": (d, d + DEEPENER_ENVELOPE_SECONDS),
                "terminal": 0.0,
            },
        },
        "compressor": None
        if preset.compressor is None
        else {
            "threshold_db": preset.compressor.threshold_db,
            "knee_db": preset.compressor.knee_db,
            "ratio": preset.compressor.ratio,
            "attack": preset.compressor.attack,
            "release": preset.compressor.release,
        },
    }


def render(params: ThunderParams, config: RenderConfig | None = None) -> tuple[Signal, RenderReport]:
    """Render a complete stereo thunder event.

    Deterministic in (params, seed, preset): the four sub-models draw from
    named child streams of the master seed, each is panned to a random
    azimuth with a small one-channel spread delay, the strike path runs
    through feedback and (optionally) shoreline reverb, and the v2 preset
    compresses the master bus. The output is clipped to [-1, 1] and spans
    onset delay + tail seconds.
    """
    config = config or RenderConfig()
    params = params if isinstance(params, ThunderParams) else ThunderParams(**params)
    preset = get_preset(params.preset)
    fs = config.sample_rate
    seed = config.seed
    d = params.onset_delay(config.speed_of_sound)
    n_total = int(round((d + config.tail_seconds) * fs))

    mono = {
        "strike": build_multistrike(
            params, seed, preset, n_total, include_reverb=False,
            sample_rate=fs, speed_of_sound=config.speed_of_sound,
        ),
        "rumbler": build_rumbler(
            params, seed, preset, n_total,
            sample_rate=fs, speed_of_sound=config.speed_of_sound,
        ),
        "afterimage": build_afterimage(
            params, seed, preset, n_total,
            sample_rate=fs, speed_of_sound=config.speed_of_sound,
        ),
        "deepener": build_deepener(
            params, seed, preset, n_total,
            sample_rate=fs, speed_of_sound=config.speed_of_sound,
        ),
    }

    mono["strike"] = feedback_delay(mono["strike"], STRIKE_FEEDBACK, fs)

    ir = None
    if params.reverb:
        if config.ir_path is not None:
            from .wavio import load_impulse_response

            ir = load_impulse_response(config.ir_path, fs)
        else:
            ir = synthesize_beach_ir(derive_seed(seed, "beach-ir"), sample_rate=fs)

    # One fixed draw order so a seed always yields the same spatial layout.
    spatial = noise_stream(seed, "postfx.spatial")
    mix = np.zeros((n_total, 2))
    report = RenderReport(
        seed=seed,
        preset=preset.name,
        distance=params.distance,
        initial_strike=params.initial_strike,
        rumble=params.rumble,
        growl=params.growl,
        reverb=params.reverb,
        duration_seconds=n_total / fs,
        sample_rate=fs,
        bit_depth=config.bit_depth,
        onset_delay_seconds=d,
        peak_dbfs=0.0,
    )
    for name in SUBMODEL_NAMES:
        azimuth = float(spatial.uniform(*PAN_RANGE_DEG))
        spread = float(spatial.uniform(*SPREAD_DELAY_RANGE_S))
        delayed_side = int(spatial.integers(0, 2))
        stereo = pan(mono[name], PanSpec(azimuth))
        if name == "strike" and ir is not None:
            stereo = reverb(stereo, ir)[:n_total]
        shift = int(round(spread * fs))
        if shift:
            side = stereo[:, delayed_side]
            stereo[:, delayed_side] = np.concatenate([np.zeros(shift), side[:-shift]])
        report.submodel_peaks_dbfs[name] = _peak_dbfs(stereo)
        report.submodel_onsets_seconds[name] = _first_nonzero_seconds(stereo, fs)
        mix += stereo

    if preset.compressor is not None:
        from .postfx import compress

        mix = compress(mix, preset.compressor, fs)
    mix = clip(mix)
    report.peak_dbfs = _peak_dbfs(mix)
    return Signal(samples=mix, sample_rate=fs), report


def render_to_bytes(params: ThunderParams, config: RenderConfig | None = None) -> tuple[bytes, RenderReport]:
    """Render and encode to WAV bytes in one step."""
    signal, report = render(params, config)
    config = config or RenderConfig()
    return encode_wav(signal.samples, signal.sample_rate, config.bit_depth), report


def render_to_file(params: ThunderParams, path, config: RenderConfig | None = None) -> RenderReport:
    """Render straight to a WAV file (written atomically)."""
    config = config or RenderConfig()
    signal, report = render(params, config)
    write_wav(path, signal.samples, signal.sample_rate, config.bit_depth)
    return report


@dataclass(frozen=True)
class Analysis:
    """Summary metrics for a rendered (or loaded) signal."""

    duration_seconds: float
    peak_dbfs: float
    onset_seconds: float | None
    first_nonzero_seconds: float | None
    band_fractions: dict
    rms_envelope: tuple

    def loudest_window_db(self) -> float:
        return max(level for _, level in self.rms_envelope)


def analyze(signal: Signal | np.ndarray, sample_rate: int = SAMPLE_RATE) -> Analysis:
    """RMS envelope (100 ms hop), band energy split, onset and peak level.

    Onset is the first sample above -80 dBFS; silence reports it as absent.
    """
    if isinstance(signal, Signal):
        samples, sample_rate = signal.samples, signal.sample_rate
    else:
        samples = np.asarray(signal, dtype=np.float64)
    if len(samples) == 0:
        raise ValueError("cannot analyze an empty signal")
    mono = samples if samples.ndim == 1 else samples.mean(axis=1)
    flat = np.abs(samples) if samples.ndim == 1 else np.max(np.abs(samples), axis=1)

    onset_hits = np.flatnonzero(flat > 10.0 ** (ONSET_THRESHOLD_DBFS / 20.0))
    onset = None if len(onset_hits) == 0 else float(onset_hits[0] / sample_rate)

    spectrum = np.abs(np.fft.rfft(mono)) ** 2
    freqs = np.fft.rfftfreq(len(mono), 1.0 / sample_rate)
    total = float(np.sum(spectrum))
    lo_edge, hi_edge = ANALYSIS_BANDS_HZ
    if total > 0:
        bands = {
            "low": float(np.sum(spectrum[freqs < lo_edge]) / total),
            "mid": float(np.sum(spectrum[(freqs >= lo_edge) & (freqs <= hi_edge)]) / total),
            "high": float(np.sum(spectrum[freqs > hi_edge]) / total),
        }
    else:
        bands = {"low": 0.0, "mid": 0.0, "high": 0.0}

    hop = max(1, int(round(ANALYSIS_HOP_SECONDS * sample_rate)))
    envelope = []
    for start in range(0, len(mono), hop):
        window = mono[start : start + hop]
        rms = math.sqrt(float(np.mean(window**2)))
        envelope.append((start / sample_rate, linear_to_db(rms)))

    return Analysis(
        duration_seconds=len(samples) / sample_rate,
        peak_dbfs=_peak_dbfs(samples),
        onset_seconds=onset,
        first_nonzero_seconds=_first_nonzero_seconds(samples, sample_rate),
        band_fractions=bands,
        rms_envelope=tuple(envelope),
    )
