import os
import subprocess
import sys

import numpy as np
import pytest

from thundersynth import backends
from thundersynth.dsp.biquad import design_biquad

try:
    NUMBA = backends.get_kernels("numba")
except ImportError:  # pragma: no cover
    NUMBA = None
NUMPY = backends.get_kernels("numpy")

needs_numba = pytest.mark.skipif(NUMBA is None, reason="numba unavailable")

RNG = np.random.default_rng(7)
N = 200_000


@needs_numba
def test_biquad_blocks_agree():
    x = RNG.uniform(-1, 1, N)
    n_blocks = -(-N // 64)
    cutoffs = np.linspace(1000.0, 5.0, n_blocks)
    coeffs = design_biquad("bandpass", cutoffs, 7.0)
    a = NUMBA.biquad_blocks(x, coeffs, 64, np.zeros(2))
    b = NUMPY.biquad_blocks(x, coeffs, 64, np.zeros(2))
    np.testing.assert_allclose(a, b, atol=1e-10, rtol=0)


@needs_numba
def test_sample_and_hold_agree_exactly():
    x = RNG.uniform(-1, 1, N)
    trigger = (np.arange(N) * 3.0 / 44100.0) % 1.0
    assert np.array_equal(NUMBA.sample_and_hold(x, trigger), NUMPY.sample_and_hold(x, trigger))


@needs_numba
def test_feedback_delay_agree_exactly():
    x = RNG.uniform(-1, 1, N)
    assert np.array_equal(
        NUMBA.feedback_delay(x, 26460, 0.15), NUMPY.feedback_delay(x, 26460, 0.15)
    )


@needs_numba
def test_gain_follower_agree_exactly():
    target = RNG.uniform(0.05, 1.0, 50_000)
    a = NUMBA.gain_follower(target, 0.0, 0.99995)
    b = NUMPY.gain_follower(target, 0.0, 0.99995)
    assert np.array_equal(a, b)


@needs_numba
def test_phasor_frac_agree_exactly():
    incr = RNG.uniform(0.0, 1e-4, N)
    assert np.array_equal(NUMBA.phasor_frac(incr, 0.25), NUMPY.phasor_frac(incr, 0.25))


@needs_numba
def test_full_render_agrees_across_backends(monkeypatch):
    from thundersynth.engine import RenderConfig, render
    from thundersynth.params import ThunderParams

    params = ThunderParams(distance=150)
    monkeypatch.setattr(backends, "kernels", NUMBA)
    a, _ = render(params, RenderConfig(seed=21))
    monkeypatch.setattr(backends, "kernels", NUMPY)
    b, _ = render(params, RenderConfig(seed=21))
    np.testing.assert_allclose(a.samples, b.samples, atol=1e-9, rtol=0)


def test_env_flag_selects_backend():
    env = dict(os.environ, THUNDERSYNTH_BACKEND="numpy")
    out = subprocess.run(
        [sys.executable, "-c", "import thundersynth; print(thundersynth.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_env_flag_rejects_garbage():
    env = dict(os.environ, THUNDERSYNTH_BACKEND="fortran")
    out = subprocess.run(
        [sys.executable, "-c", "import thundersynth"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert out.returncode != 0
    assert "THUNDERSYNTH_BACKEND" in out.stderr
