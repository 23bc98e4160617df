"""Compare the numba kernels against the pure numpy fallback.

Usage:  python benchmarks/bench_backends.py [--renders N]

Times each hot kernel on render-sized buffers under both backends, then a
full end-to-end render each way. Run it after any kernel change; the numba
column should stay well ahead on the recursive kernels.
"""

import argparse
import time

import numpy as np

from thundersynth import backends
from thundersynth.dsp.biquad import design_biquad
from thundersynth.engine import RenderConfig, render
from thundersynth.params import ThunderParams

N_SAMPLES = 1_000_000
BLOCK = 64


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def kernel_cases(kernels):
    rng = np.random.default_rng(0)
    x = rng.uniform(-1.0, 1.0, N_SAMPLES)
    n_blocks = -(-N_SAMPLES // BLOCK)
    cutoffs = np.linspace(1000.0, 5.0, n_blocks)
    coeffs = design_biquad("lowpass", cutoffs, 0.707)
    trigger = (np.arange(N_SAMPLES) * 2.0 / 44100.0) % 1.0
    target = rng.uniform(0.2, 1.0, N_SAMPLES)
    incr = np.full(N_SAMPLES, 2.0 / 44100.0)
    return {
        "biquad_blocks (ramped)": lambda: kernels.biquad_blocks(x, coeffs, BLOCK, np.zeros(2)),
        "sample_and_hold": lambda: kernels.sample_and_hold(x, trigger),
        "feedback_delay": lambda: kernels.feedback_delay(x, 26460, 0.15),
        "gain_follower": lambda: kernels.gain_follower(target, 0.0, 0.9999546),
        "phasor_frac": lambda: kernels.phasor_frac(incr, 0.0),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--renders", type=int, default=1, help="full renders to time per backend")
    args = parser.parse_args()

    results = {}
    for name in ("numba", "numpy"):
        try:
            kernels = backends.get_kernels(name)
        except ImportError:
            print(f"{name}: unavailable, skipping")
            continue
        cases = kernel_cases(kernels)
        for case_fn in cases.values():
            case_fn()  # warm JIT / caches
        results[name] = {case: _time(fn) for case, fn in cases.items()}

    cases = list(next(iter(results.values())))
    width = max(len(c) for c in cases)
    header = f"{'kernel':<{width}}" + "".join(f"  {name:>10}" for name in results)
    print(header)
    print("-" * len(header))
    for case in cases:
        row = f"{case:<{width}}"
        for name in results:
            row += f"  {results[name][case] * 1e3:>8.2f}ms"
        print(row)

    params = ThunderParams(distance=343)
    saved = backends.kernels
    try:
        print()
        for name in results:
            backends.kernels = backends.get_kernels(name)
            render(params, RenderConfig(seed=1))  # warm
            start = time.perf_counter()
            for i in range(args.renders):
                render(params, RenderConfig(seed=2 + i))
            per = (time.perf_counter() - start) / args.renders
            print(f"full render ({name}): {per * 1e3:.0f} ms")
    finally:
        backends.kernels = saved


if __name__ == "__main__":
    main()
