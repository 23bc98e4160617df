import numpy as np
import pytest

from thundersynth.constants import CONTROL_BLOCK_SAMPLES, CUTOFF_FLOOR_HZ, SAMPLE_RATE
from thundersynth.dsp.biquad import (
    Biquad,
    BiquadSpec,
    biquad_filter,
    biquad_ramped,
    cutoff_schedule,
    design_biquad,
    effective_cutoff,
)

from .helpers import analog_prototype_magnitude, measure_magnitude


def _impulse(n):
    x = np.zeros(n)
    x[0] = 1.0
    return x


def test_spec_validation():
    with pytest.raises(ValueError):
        BiquadSpec("lowpass", 0.0, 1.0)
    with pytest.raises(ValueError):
        BiquadSpec("lowpass", SAMPLE_RATE / 2, 1.0)
    with pytest.raises(ValueError):
        BiquadSpec("lowpass", 100.0, 0.0)
    with pytest.raises(ValueError):
        BiquadSpec("notch", 100.0, 1.0)


def test_lowpass_dc_probe():
    # constant 0.5 input settles at 0.5 out (unity DC gain)
    y = biquad_filter(np.full(2 * SAMPLE_RATE, 0.5), "lowpass", 1000.0, 1.0)
    assert y[-1] == pytest.approx(0.5, abs=1e-9)


def test_bandpass_peak_at_center():
    h = biquad_filter(_impulse(2**16), "bandpass", 333.0, 4.0)
    probe = np.linspace(233.0, 433.0, 201)
    mag = measure_magnitude(h, probe)
    peak_db = 20 * np.log10(mag.max())
    assert abs(peak_db) < 0.5
    assert abs(probe[mag.argmax()] - 333.0) < 5.0


@pytest.mark.parametrize(
    "kind,f0,q",
    [("lowpass", 1000.0, 1.0), ("highpass", 30.0, 3.0), ("bandpass", 333.0, 4.0)],
)
def test_impulse_response_matches_closed_form_transfer(kind, f0, q):
    # measured FFT versus the rational H(e^jw) evaluated from the
    # coefficients; and versus the analog prototype on the warped axis
    n = 2**17
    h = biquad_filter(_impulse(n), kind, f0, q)
    freqs = np.geomspace(f0 / 10, min(f0 * 10, 20000.0), 50)
    measured = measure_magnitude(h, freqs)

    b0, b1, b2, a1, a2 = design_biquad(kind, f0, q)[0]
    z = np.exp(-2j * np.pi * freqs / SAMPLE_RATE)
    rational = np.abs((b0 + b1 * z + b2 * z**2) / (1 + a1 * z + a2 * z**2))
    np.testing.assert_allclose(20 * np.log10(measured), 20 * np.log10(rational), atol=0.5)

    prototype = analog_prototype_magnitude(kind, f0, q, freqs)
    np.testing.assert_allclose(20 * np.log10(measured), 20 * np.log10(prototype), atol=0.5)


def test_anchor_gains():
    n = 2**16
    lp = biquad_filter(_impulse(n), "lowpass", 1000.0, 0.707)
    assert abs(np.sum(lp) - 1.0) < 1e-6  # DC gain
    hp = biquad_filter(_impulse(n), "highpass", 1000.0, 0.707)
    nyq = measure_magnitude(hp, [SAMPLE_RATE / 2 * 0.9999])[0]
    assert abs(20 * np.log10(nyq)) < 0.01


def test_stability_poles_inside_unit_circle():
    rng = np.random.default_rng(1)
    for _ in range(300):
        f = float(np.exp(rng.uniform(np.log(CUTOFF_FLOOR_HZ), np.log(0.49 * SAMPLE_RATE))))
        q = float(rng.uniform(0.1, 20.0))
        kind = ("lowpass", "highpass", "bandpass")[int(rng.integers(3))]
        _, _, _, a1, a2 = design_biquad(kind, f, q)[0]
        poles = np.roots([1.0, a1, a2])
        assert np.all(np.abs(poles) < 1.0)


@pytest.mark.parametrize(
    "kind,f0,q", [("bandpass", 100.0, 10.0), ("lowpass", 5.0, 20.0), ("highpass", 15.0, 3.0)]
)
def test_impulse_response_decays(kind, f0, q):
    w0 = 2 * np.pi * f0 / SAMPLE_RATE
    alpha = np.sin(w0) / (2 * q)
    n = int(np.log(1e8) / alpha) + 1
    h = biquad_filter(_impulse(n), kind, f0, q)
    tail = np.abs(h[int(0.9 * n) :])
    assert tail.max() < 1e-6


def test_chunked_processing_matches_one_shot():
    rng = np.random.default_rng(2)
    x = rng.uniform(-1, 1, 1000)
    whole = biquad_filter(x, "bandpass", 700.0, 7.0)
    filt = Biquad(BiquadSpec("bandpass", 700.0, 7.0))
    split = np.concatenate([filt.process(x[:137]), filt.process(x[137:613]), filt.process(x[613:])])
    np.testing.assert_allclose(split, whole, atol=1e-12)


def test_ramp_midpoint_within_one_block():
    period = (0.0, 2.0)
    block_hz = 1000.0 * (CONTROL_BLOCK_SAMPLES / SAMPLE_RATE) / (period[1] - period[0])
    mid = effective_cutoff(1000.0, 0.0, period, 1.0)
    assert abs(mid - 500.0) <= block_hz + 1e-9


def test_ramp_constant_when_degenerate():
    values = cutoff_schedule(700.0, 700.0, (0.0, 1.0), SAMPLE_RATE)
    assert np.all(values == 700.0)


def test_ramp_clamps_to_floor():
    assert effective_cutoff(33.0, 0.0, (0.0, 1.0), 1.0) == CUTOFF_FLOOR_HZ
    assert effective_cutoff(33.0, 0.0, (0.0, 1.0), 99.0) == CUTOFF_FLOOR_HZ


def test_ramped_filter_tracks_schedule():
    # a ramped run equals block-wise static filtering with carried state
    rng = np.random.default_rng(3)
    x = rng.uniform(-1, 1, 4 * CONTROL_BLOCK_SAMPLES)
    period = (0.0, len(x) / SAMPLE_RATE)
    y = biquad_ramped(x, "lowpass", 0.707, 1000.0, 500.0, period)
    cutoffs = cutoff_schedule(1000.0, 500.0, period, len(x))
    from thundersynth import backends

    coeffs = design_biquad("lowpass", cutoffs, 0.707)
    expected = backends.kernels.biquad_blocks(x, coeffs, CONTROL_BLOCK_SAMPLES, np.zeros(2))
    np.testing.assert_array_equal(y, expected)


def test_empty_input():
    assert len(biquad_filter(np.zeros(0), "lowpass", 100.0, 1.0)) == 0
    assert len(biquad_ramped(np.zeros(0), "lowpass", 1.0, 100.0, 50.0, (0.0, 1.0))) == 0
