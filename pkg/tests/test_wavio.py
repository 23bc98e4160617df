import struct

import numpy as np
import pytest

from thundersynth.constants import SAMPLE_RATE
from thundersynth.wavio import (
    WavFormatError,
    decode_wav,
    encode_wav,
    load_impulse_response,
    read_wav,
    resample_linear,
    write_wav,
)


def _data_chunk_size(blob: bytes) -> int:
    pos = 12
    while pos + 8 <= len(blob):
        tag = blob[pos : pos + 4]
        (size,) = struct.unpack("<I", blob[pos + 4 : pos + 8])
        if tag == b"data":
            return size
        pos += 8 + size + size % 2
    raise AssertionError("no data chunk")


def test_float32_stereo_chunk_size():
    samples = np.zeros((SAMPLE_RATE, 2))
    blob = encode_wav(samples, SAMPLE_RATE, "float32")
    assert blob[:4] == b"RIFF" and blob[8:12] == b"WAVE"
    assert _data_chunk_size(blob) == SAMPLE_RATE * 2 * 4


def test_float32_roundtrip_exact():
    rng = np.random.default_rng(0)
    samples = rng.uniform(-1, 1, (500, 2))
    decoded, rate = decode_wav(encode_wav(samples))
    assert rate == SAMPLE_RATE
    assert decoded.shape == (500, 2)
    np.testing.assert_array_equal(decoded, samples.astype(np.float32).astype(np.float64))


def test_pcm16_roundtrip_quantization_bound():
    rng = np.random.default_rng(1)
    samples = rng.uniform(-1, 1, 1000)
    decoded, rate = decode_wav(encode_wav(samples, bit_depth="pcm16"))
    assert rate == SAMPLE_RATE
    assert np.max(np.abs(decoded - samples)) <= 1.0 / 32768.0


def test_empty_signal_roundtrip():
    blob = encode_wav(np.zeros(0))
    assert _data_chunk_size(blob) == 0
    decoded, _ = decode_wav(blob)
    assert len(decoded) == 0


def test_mono_shape():
    decoded, _ = decode_wav(encode_wav(np.zeros(10)))
    assert decoded.shape == (10,)


def test_write_is_atomic(tmp_path):
    target = tmp_path / "out.wav"
    write_wav(target, np.zeros(100))
    assert target.exists()
    leftovers = [p for p in tmp_path.iterdir() if p != target]
    assert leftovers == []
    samples, rate = read_wav(target)
    assert len(samples) == 100 and rate == SAMPLE_RATE


def test_write_missing_directory_raises(tmp_path):
    with pytest.raises(OSError):
        write_wav(tmp_path / "nope" / "out.wav", np.zeros(10))


def test_malformed_inputs_rejected():
    with pytest.raises(WavFormatError):
        decode_wav(b"not a wav at all")
    with pytest.raises(WavFormatError):
        decode_wav(b"RIFF\x00\x00\x00\x00WAVE")  # no chunks
    blob = bytearray(encode_wav(np.zeros(4)))
    blob[20] = 77  # unknown format tag
    with pytest.raises(WavFormatError):
        decode_wav(bytes(blob))


def test_unsupported_bit_depth():
    with pytest.raises(ValueError):
        encode_wav(np.zeros(4), bit_depth="pcm24")


def test_resample_passthrough_and_length():
    x = np.sin(np.linspace(0, 20, 2000))
    assert resample_linear(x, SAMPLE_RATE, SAMPLE_RATE) is not None
    up = resample_linear(x, 22050, 44100)
    assert abs(len(up) - 4000) <= 1
    # 100 Hz tone survives resampling
    t = np.arange(22050) / 22050
    tone = np.sin(2 * np.pi * 100 * t)
    tone_up = resample_linear(tone, 22050, 44100)
    t_up = np.arange(len(tone_up)) / 44100
    np.testing.assert_allclose(tone_up[100:-100], np.sin(2 * np.pi * 100 * t_up)[100:-100], atol=1e-3)


def test_load_impulse_response_promotes_mono_and_resamples(tmp_path):
    path = tmp_path / "ir.wav"
    write_wav(path, np.linspace(1, 0, 22050), sample_rate=SAMPLE_RATE, bit_depth="float32")
    ir = load_impulse_response(path)
    assert ir.ndim == 2 and ir.shape[1] == 2
    np.testing.assert_array_equal(ir[:, 0], ir[:, 1])
