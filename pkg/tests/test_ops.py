import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from thundersynth.constants import SAMPLE_RATE
from thundersynth.dsp.noise import white_noise
from thundersynth.dsp.ops import Phasor, clip, convolve, half_rectify, sample_and_hold

from .helpers import brute_force_convolve

float_arrays = hnp.arrays(
    np.float64,
    hnp.array_shapes(min_dims=1, max_dims=1, max_side=64),
    elements=st.floats(min_value=-10, max_value=10),
)


def test_clip_trivials():
    assert clip(np.array([1.5]))[0] == 1.0
    assert clip(np.array([-2.0]))[0] == -1.0
    assert clip(np.array([0.3]))[0] == 0.3


def test_rectify_trivials():
    assert half_rectify(np.array([-0.4]))[0] == 0.0
    assert half_rectify(np.array([0.7]))[0] == 0.7


def test_rectified_uniform_mean():
    # E[max(U[-1,1), 0)] = 1/4
    x = half_rectify(white_noise(42, 1_000_000))
    assert abs(x.mean() - 0.25) < 0.01


@given(float_arrays)
def test_clip_idempotent(x):
    once = clip(x)
    assert np.array_equal(clip(once), once)


@given(float_arrays)
def test_rectify_idempotent(x):
    once = half_rectify(x)
    assert np.array_equal(half_rectify(once), once)


def test_sample_and_hold_wrap_captures():
    out = sample_and_hold(np.array([0.5, -0.3]), np.array([0.9, 0.1]))
    assert np.array_equal(out, [0.5, -0.3])


def test_sample_and_hold_monotone_trigger_holds():
    out = sample_and_hold(np.array([1.0, 2.0, 3.0]), np.array([0.1, 0.2, 0.3]))
    assert np.array_equal(out, [1.0, 1.0, 1.0])


def test_sample_and_hold_length_mismatch():
    with pytest.raises(ValueError):
        sample_and_hold(np.zeros(3), np.zeros(4))


def test_sample_and_hold_plateau_count():
    # 3 seconds with a 2 Hz phasor: about six captures
    n = 3 * SAMPLE_RATE
    trigger = Phasor().run(np.full(n, 2.0))
    out = sample_and_hold(white_noise(1, n), trigger)
    plateaus = 1 + int(np.count_nonzero(out[1:] != out[:-1]))
    assert 5 <= plateaus <= 8


@given(st.integers(0, 2**32 - 1))
def test_sample_and_hold_changes_only_at_wraps(seed):
    rng = np.random.default_rng(seed)
    n = 200
    trigger = rng.uniform(0, 1, n)
    x = rng.uniform(-1, 1, n)
    out = sample_and_hold(x, trigger)
    wraps = set((np.flatnonzero(trigger[1:] < trigger[:-1]) + 1).tolist())
    changes = set((np.flatnonzero(out[1:] != out[:-1]) + 1).tolist())
    assert changes <= wraps
    assert out[0] == x[0]


def test_phasor_wrap_rate():
    ph = Phasor()
    values = ph.run(np.full(3 * SAMPLE_RATE, 1.0))
    wraps = int(np.count_nonzero(values[1:] < values[:-1]))
    assert wraps == 3
    assert np.all((values >= 0) & (values < 1))


def test_phasor_frozen_at_zero():
    ph = Phasor(phase=0.25)
    values = ph.run(np.zeros(1000))
    assert np.all(values == 0.25)


def test_phasor_tick_matches_run():
    ph_a, ph_b = Phasor(), Phasor()
    freqs = np.linspace(1.0, 5.0, 500)
    run_values = ph_a.run(freqs)
    tick_values = np.array([ph_b.tick(f) for f in freqs])
    assert np.array_equal(run_values, tick_values)


def test_phasor_unit_offset_drive():
    # a zero control signal plus one drives a 1 Hz phasor
    gain = np.zeros(SAMPLE_RATE)
    values = Phasor().run(gain + 1.0)
    assert int(np.count_nonzero(values[1:] < values[:-1])) == 1


def test_phasor_rejects_negative_frequency():
    with pytest.raises(ValueError):
        Phasor().tick(-1.0)


def test_convolve_delta_identity():
    ir = np.array([0.5, -0.25, 0.125])
    out = convolve(np.array([1.0, 0.0, 0.0]), ir)
    assert np.array_equal(out[:3], ir)
    assert np.all(out[3:] == 0.0)


def test_convolve_hand_case():
    assert np.allclose(convolve(np.array([1.0, 1.0]), np.array([1.0, 1.0])), [1.0, 2.0, 1.0])


def test_convolve_matches_brute_force():
    rng = np.random.default_rng(5)
    x = rng.uniform(-1, 1, 64)
    ir = rng.uniform(-1, 1, 16)
    fast = convolve(x, ir)
    slow = brute_force_convolve(x, ir)
    assert len(fast) == 64 + 16 - 1
    np.testing.assert_allclose(fast, slow, atol=1e-9)


def test_convolve_preserves_leading_silence_exactly():
    x = np.zeros(1000)
    x[300] = 1.0
    out = convolve(x, np.full(8, 0.25))
    assert np.all(out[:300] == 0.0)
    assert out[300] == 0.25


def test_convolve_rejects_empty():
    with pytest.raises(ValueError):
        convolve(np.zeros(0), np.ones(3))
    with pytest.raises(ValueError):
        convolve(np.ones(3), np.zeros(0))


def test_convolve_all_zero_signal():
    out = convolve(np.zeros(10), np.ones(4))
    assert np.all(out == 0.0)
    assert len(out) == 13
