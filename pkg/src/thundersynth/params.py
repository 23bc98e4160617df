"""User-facing synthesis parameters and their validation."""

from dataclasses import dataclass

from .constants import SPEED_OF_SOUND_M_S

DISTANCE_RANGE_M = (0.0, 10000.0)
UNIT_RANGE = (0.0, 1.0)
PRESET_NAMES = ("v1", "v2")


class ParamError(ValueError):
    """Invalid parameter; carries the offending field name."""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


def _check_range(field: str, value, lo, hi, unit: str = ""):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ParamError(field, f"{field} must be a number, got {value!r}") from None
    if not lo <= value <= hi:
        suffix = f" {unit}" if unit else ""
        raise ParamError(
            field, f"{field} must be within [{lo:g}, {hi:g}]{suffix} (got {value:g})"
        )
    return value


@dataclass(frozen=True)
class ThunderParams:
    """The four user parameters plus the reverb toggle and preset selector."""

    distance: float = 500.0
    initial_strike: float = 0.7
    rumble: float = 0.5
    growl: float = 0.5
    reverb: bool = True
    preset: str = "v2"

    def __post_init__(self):
        object.__setattr__(
            self, "distance", _check_range("distance", self.distance, *DISTANCE_RANGE_M, "m")
        )
        for name in ("initial_strike", "rumble", "growl"):
            object.__setattr__(self, name, _check_range(name, getattr(self, name), *UNIT_RANGE))
        if not isinstance(self.reverb, bool):
            raise ParamError("reverb", f"reverb must be a boolean (got {self.reverb!r})")
        if self.preset not in PRESET_NAMES:
            raise ParamError(
                "preset", f"preset must be one of {list(PRESET_NAMES)} (got {self.preset!r})"
            )

    def onset_delay(self, speed_of_sound: float = SPEED_OF_SOUND_M_S) -> float:
        """Propagation delay in seconds from the strike point to the listener."""
        return self.distance / speed_of_sound
