"""Seeded noise sources.

Built on the Philox counter-based generator so that a (seed, stream label)
pair always produces the same samples on every platform, and differently
labeled streams are statistically independent.
"""

import hashlib
import threading

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(seed: int, label: str) -> int:
    """Derive a 64-bit child seed from a master seed and a stream label."""
    key = (int(seed) & _MASK64).to_bytes(8, "little")
    digest = hashlib.blake2b(label.encode("utf-8"), digest_size=8, key=key).digest()
    return int.from_bytes(digest, "little")


def noise_stream(seed: int, label: str = "main") -> np.random.Generator:
    """Independent deterministic random stream for (seed, label)."""
    return np.random.Generator(np.random.Philox(key=derive_seed(seed, label)))


_scratch = threading.local()


def borrow_stream(seed: int, label: str) -> np.random.Generator:
    """Per-thread scratch stream, rekeyed in place for (seed, label).

    Yields exactly the samples noise_stream would, but skips generator
    construction. The stream is only valid until the next borrow on the
    same thread, so consume it fully before borrowing again.
    """
    bitgen = getattr(_scratch, "bitgen", None)
    if bitgen is None:
        bitgen = np.random.Philox(key=0)
        _scratch.bitgen = bitgen
        _scratch.gen = np.random.Generator(bitgen)
    key = derive_seed(seed, label)
    bitgen.state = {
        "bit_generator": "Philox",
        "state": {
            "counter": np.zeros(4, dtype=np.uint64),
            "key": np.array([key, 0], dtype=np.uint64),
        },
        "buffer": np.zeros(4, dtype=np.uint64),
        "buffer_pos": 4,
        "has_uint32": 0,
        "uinteger": 0,
    }
    return _scratch.gen


def white_noise(seed: int, n: int, stream: str = "main") -> np.ndarray:
    """n samples i.i.d. uniform on [-1, 1), fully determined by (seed, stream)."""
    if n < 0:
        raise ValueError(f"sample count must be >= 0, got {n}")
    return noise_stream(seed, stream).uniform(-1.0, 1.0, n)
