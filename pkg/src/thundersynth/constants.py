"""Shared engine constants.

Everything renders at a fixed 44.1 kHz; time-varying filter parameters are
updated once per control block.
"""

SAMPLE_RATE = 44100
CONTROL_BLOCK_SAMPLES = 64

# Ramps that target 0 Hz hold at this floor; the gain envelope carries the
# remaining decay to silence.
CUTOFF_FLOOR_HZ = 5.0

SPEED_OF_SOUND_M_S = 343.0

# Small positive value used wherever a strictly positive terminal gain or
# onset offset is required.
EPSILON = 1e-4

RENDER_TAIL_SECONDS = 22.0
