"""The two rendering presets.

"v1" is the original tuning; "v2" softens the strike resonance, trims strike
brightness by 20 Hz, raises the growl high-pass to cut sub-audible rumble,
drops the afterimage level and inserts a master-bus compressor.
"""

from dataclasses import dataclass

from .postfx import CompressorSpec


@dataclass(frozen=True)
class PresetConstants:
    name: str
    strike_q: float
    strike_center_offset_hz: float
    deepener_hp_hz: float
    afterimage_gain: float
    compressor: CompressorSpec | None


PRESET_V1 = PresetConstants(
    name="v1",
    strike_q=10.0,
    strike_center_offset_hz=0.0,
    deepener_hp_hz=15.0,
    afterimage_gain=1.0,
    compressor=None,
)

PRESET_V2 = PresetConstants(
    name="v2",
    strike_q=7.0,
    strike_center_offset_hz=-20.0,
    deepener_hp_hz=30.0,
    afterimage_gain=0.4,
    compressor=CompressorSpec(
        threshold_db=-20.0, knee_db=20.0, ratio=12.0, attack=0.0, release=0.5
    ),
)

PRESETS = {"v1": PRESET_V1, "v2": PRESET_V2}


def get_preset(name: str) -> PresetConstants:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}, expected one of {sorted(PRESETS)}") from None
