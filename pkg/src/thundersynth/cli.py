"""Command-line front door: render, analyze, serve."""

import argparse
import sys
from pathlib import Path

import numpy as np

from .engine import RenderConfig, Signal, analyze, render_to_file
from .params import DISTANCE_RANGE_M, PRESET_NAMES, UNIT_RANGE, ParamError, ThunderParams
from .wavio import BIT_DEPTHS, WavFormatError, read_wav

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2


def _ranged_float(lo: float, hi: float, unit: str = ""):
    def parse(text: str) -> float:
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
        if not lo <= value <= hi:
            suffix = f" {unit}" if unit else ""
            raise argparse.ArgumentTypeError(
                f"value must be within [{lo:g}, {hi:g}]{suffix} (got {value:g})"
            )
        return value

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thundersynth",
        description="Deterministic thunder synthesis: render WAV files, analyze them, "
        "or serve the HTTP control surface.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rend = sub.add_parser("render", help="render a thunder event to a WAV file")
    rend.add_argument(
        "--distance", type=_ranged_float(*DISTANCE_RANGE_M, "m"), default=500.0,
        help="distance to the strike in meters, range [0, 10000] (default: 500)",
    )
    rend.add_argument(
        "--initial-strike", type=_ranged_float(*UNIT_RANGE), default=0.7,
        help="strike intensity, range [0, 1] (default: 0.7)",
    )
    rend.add_argument(
        "--rumble", type=_ranged_float(*UNIT_RANGE), default=0.5,
        help="rumble intensity, range [0, 1] (default: 0.5)",
    )
    rend.add_argument(
        "--growl", type=_ranged_float(*UNIT_RANGE), default=0.5,
        help="growl intensity, range [0, 1] (default: 0.5)",
    )
    rend.add_argument(
        "--reverb", action=argparse.BooleanOptionalAction, default=True,
        help="convolve the strike path with the shoreline impulse response (default: on)",
    )
    rend.add_argument(
        "--preset", choices=PRESET_NAMES, default="v2",
        help="rendering preset (default: v2)",
    )
    rend.add_argument(
        "--seed", type=int, default=None,
        help="64-bit render seed; drawn randomly and reported when omitted",
    )
    rend.add_argument(
        "--bit-depth", choices=BIT_DEPTHS, default="float32",
        help="output sample format (default: float32)",
    )
    rend.add_argument(
        "--ir", default=None, metavar="WAV",
        help="impulse-response WAV overriding the synthetic one",
    )
    rend.add_argument(
        "--out", default="thunder.wav", metavar="WAV",
        help="output path (default: thunder.wav)",
    )

    ana = sub.add_parser("analyze", help="print metrics for a WAV file")
    ana.add_argument("--in", dest="infile", required=True, metavar="WAV", help="input WAV path")
    ana.add_argument(
        "--format", choices=("text", "csv"), default="text",
        help="output format (default: text)",
    )

    srv = sub.add_parser("serve", help="run the local HTTP service and web UI")
    srv.add_argument("--port", type=int, default=8781, help="listen port (default: 8781)")
    srv.add_argument("--bind", default="127.0.0.1", help="bind address (default: 127.0.0.1)")
    srv.add_argument(
        "--ui-dir", default=None, metavar="DIR",
        help="built web-UI directory to serve at / (default: ./frontend/dist when present)",
    )
    return parser


def _cmd_render(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(np.random.default_rng().integers(0, 2**32))
    try:
        params = ThunderParams(
            distance=args.distance,
            initial_strike=args.initial_strike,
            rumble=args.rumble,
            growl=args.growl,
            reverb=args.reverb,
            preset=args.preset,
        )
    except ParamError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    config = RenderConfig(seed=seed, bit_depth=args.bit_depth, ir_path=args.ir)
    try:
        report = render_to_file(params, args.out, config)
    except (OSError, WavFormatError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    print(report.to_text())
    return EXIT_OK


def _format_text(result) -> str:
    onset = "none" if result.onset_seconds is None else f"{result.onset_seconds:.6f}"
    lines = [
        f"duration_seconds: {result.duration_seconds:.6f}",
        f"peak_dbfs: {result.peak_dbfs:.2f}",
        f"onset_seconds: {onset}",
        "band_fraction_low: {low:.4f}".format(**result.band_fractions),
        "band_fraction_mid: {mid:.4f}".format(**result.band_fractions),
        "band_fraction_high: {high:.4f}".format(**result.band_fractions),
        "rms_envelope:",
    ]
    lines += [f"  {t:8.3f}s  {db:8.2f} dBFS" for t, db in result.rms_envelope]
    return "\n".join(lines)


def _format_csv(result) -> str:
    onset = "none" if result.onset_seconds is None else f"{result.onset_seconds:.6f}"
    lines = [
        f"# duration_seconds={result.duration_seconds:.6f}",
        f"# peak_dbfs={result.peak_dbfs:.2f}",
        f"# onset_seconds={onset}",
        f"# band_fraction_low={result.band_fractions['low']:.4f}",
        f"# band_fraction_mid={result.band_fractions['mid']:.4f}",
        f"# band_fraction_high={result.band_fractions['high']:.4f}",
        "time_s,rms_dbfs",
    ]
    lines += [f"{t:.3f},{db:.2f}" for t, db in result.rms_envelope]
    return "\n".join(lines)


def _cmd_analyze(args) -> int:
    try:
        samples, rate = read_wav(args.infile)
    except (OSError, WavFormatError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    result = analyze(Signal(samples=samples, sample_rate=rate))
    print(_format_text(result) if args.format == "text" else _format_csv(result))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import socket

    import uvicorn

    from .service import create_app

    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.bind, args.port))
        probe.close()
    except OSError as err:
        print(f"error: cannot bind {args.bind}:{args.port} ({err})", file=sys.stderr)
        return EXIT_IO

    ui_dir = args.ui_dir
    if ui_dir is None:
        candidate = Path("frontend") / "dist"
        ui_dir = candidate if candidate.is_dir() else None
    app = create_app(ui_dir=ui_dir)
    print(f"listening on http://{args.bind}:{args.port}")
    uvicorn.run(app, host=args.bind, port=args.port, log_level="warning")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "render":
        return _cmd_render(args)
    if args.command == "analyze":
        return _cmd_analyze(args)
    return _cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
