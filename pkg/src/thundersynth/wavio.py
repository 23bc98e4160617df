"""RIFF/WAVE encoding, decoding and atomic file output.

Supports 32-bit float and 16-bit PCM, mono or stereo. Reading resamples
other rates to the engine rate with linear interpolation.
"""

import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .constants import SAMPLE_RATE

BIT_DEPTHS = ("float32", "pcm16")

_FORMAT_PCM = 1
_FORMAT_FLOAT = 3


class WavFormatError(ValueError):
    """Raised for files that are not decodable RIFF/WAVE PCM or float."""


def _channel_view(samples: np.ndarray) -> np.ndarray:
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim == 1:
        samples = samples[:, None]
    if samples.ndim != 2 or samples.shape[1] not in (1, 2):
        raise ValueError("expected mono (n,) or stereo (n, 2) samples")
    return samples


def encode_wav(samples: np.ndarray, sample_rate: int = SAMPLE_RATE, bit_depth: str = "float32") -> bytes:
    """Encode samples into a complete WAV byte string."""
    if bit_depth not in BIT_DEPTHS:
        raise ValueError(f"bit_depth must be one of {BIT_DEPTHS}, got {bit_depth!r}")
    frames = _channel_view(samples)
    n, channels = frames.shape
    if bit_depth == "float32":
        fmt_tag, bits = _FORMAT_FLOAT, 32
        payload = frames.astype("<f4").tobytes()
    else:
        fmt_tag, bits = _FORMAT_PCM, 16
        scaled = np.round(np.clip(frames, -1.0, 1.0) * 32767.0)
        payload = scaled.astype("<i2").tobytes()

    block_align = channels * bits // 8
    fmt_chunk = struct.pack(
        "<HHIIHH", fmt_tag, channels, sample_rate, sample_rate * block_align, block_align, bits
    )
    chunks = [(b"fmt ", fmt_chunk)]
    if fmt_tag == _FORMAT_FLOAT:
        chunks.append((b"fact", struct.pack("<I", n)))
    chunks.append((b"data", payload))

    body = b"WAVE"
    for tag, content in chunks:
        body += tag + struct.pack("<I", len(content)) + content
        if len(content) % 2:
            body += b"\x00"
    return b"RIFF" + struct.pack("<I", len(body)) + body


def write_wav(
    path,
    samples: np.ndarray,
    sample_rate: int = SAMPLE_RATE,
    bit_depth: str = "float32",
) -> None:
    """Write a WAV file atomically (temp file in place, then rename)."""
    path = Path(path)
    data = encode_wav(samples, sample_rate, bit_depth)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".wav.part")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def decode_wav(data: bytes) -> tuple[np.ndarray, int]:
    """Decode WAV bytes to (float64 samples, sample_rate).

    Mono comes back as shape (n,), stereo as (n, 2).
    """
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise WavFormatError("not a RIFF/WAVE file")
    pos = 12
    fmt = None
    payload = None
    while pos + 8 <= len(data):
        tag = data[pos : pos + 4]
        (size,) = struct.unpack("<I", data[pos + 4 : pos + 8])
        content = data[pos + 8 : pos + 8 + size]
        if tag == b"fmt ":
            if size < 16:
                raise WavFormatError("fmt chunk too short")
            fmt = struct.unpack("<HHIIHH", content[:16])
        elif tag == b"data":
            payload = content
        pos += 8 + size + (size % 2)
    if fmt is None or payload is None:
        raise WavFormatError("missing fmt or data chunk")
    fmt_tag, channels, rate, _byte_rate, _block_align, bits = fmt
    if channels not in (1, 2):
        raise WavFormatError(f"unsupported channel count {channels}")
    if fmt_tag == _FORMAT_FLOAT and bits == 32:
        flat = np.frombuffer(payload, dtype="<f4").astype(np.float64)
    elif fmt_tag == _FORMAT_PCM and bits == 16:
        # symmetric scale mirrors the encoder; clamp the lone -32768 code
        flat = np.maximum(np.frombuffer(payload, dtype="<i2").astype(np.float64) / 32767.0, -1.0)
    else:
        raise WavFormatError(f"unsupported format tag {fmt_tag} at {bits} bits")
    frames = flat.reshape(-1, channels)
    return (frames[:, 0] if channels == 1 else frames), int(rate)


def read_wav(path) -> tuple[np.ndarray, int]:
    with open(path, "rb") as handle:
        return decode_wav(handle.read())


def resample_linear(samples: np.ndarray, src_rate: int, dst_rate: int) -> np.ndarray:
    """Linear-interpolation resampling; passthrough when rates match."""
    if src_rate == dst_rate:
        return np.asarray(samples, dtype=np.float64)
    frames = _channel_view(samples)
    n_src = frames.shape[0]
    n_dst = max(1, int(round(n_src * dst_rate / src_rate)))
    src_t = np.arange(n_src) / src_rate
    dst_t = np.arange(n_dst) / dst_rate
    out = np.stack([np.interp(dst_t, src_t, frames[:, c]) for c in range(frames.shape[1])], axis=1)
    return out[:, 0] if out.shape[1] == 1 else out


def load_impulse_response(path, sample_rate: int = SAMPLE_RATE) -> np.ndarray:
    """Read an IR override file as stereo float64 at the engine rate."""
    samples, rate = read_wav(path)
    samples = resample_linear(samples, rate, sample_rate)
    if samples.ndim == 1:
        samples = np.stack([samples, samples], axis=1)
    return samples
