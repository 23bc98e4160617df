"""thundersynth: deterministic, seedable procedural thunder synthesis."""

from .backends import BACKEND
from .constants import SAMPLE_RATE
from .engine import (
    Analysis,
    RenderConfig,
    RenderReport,
    Signal,
    analyze,
    describe_graph,
    render,
    render_to_bytes,
    render_to_file,
)
from .params import ParamError, ThunderParams
from .presets import PRESETS, get_preset
from .wavio import read_wav, write_wav

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "BACKEND",
    "ParamError",
    "PRESETS",
    "RenderConfig",
    "RenderReport",
    "SAMPLE_RATE",
    "Signal",
    "ThunderParams",
    "analyze",
    "describe_graph",
    "get_preset",
    "read_wav",
    "render",
    "render_to_bytes",
    "render_to_file",
    "write_wav",
    "__version__",
]
