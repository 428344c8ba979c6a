"""Command-line front end: expand / compact / schedule / decode / ber.

Exit codes: 0 success, 1 usage error, 2 data error.  Diagnostics go to
stderr; data goes to stdout or the --out file.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from fractions import Fraction

import numpy as np

from . import channel, code_model, compact, decoder, schedule
from .fixedpoint import QFormat

USAGE_ERROR = 1
DATA_ERROR = 2

_BUNDLED = {"wifi-z27": 27, "wifi-z54": 54, "wifi-z81": 81}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


class DataError(Exception):
    pass


def _load_code_file(path: str) -> code_model.BaseMatrix:
    if path in _BUNDLED:
        return code_model.wifi_base_matrix(_BUNDLED[path])
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read code file {path}: {exc}") from exc
    try:
        return code_model.parse_base_matrix(text)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", encoding="utf-8")
    return contextlib.nullcontext(sys.stdout)  # never close the real stdout


def _matrix_text(name: str, m: np.ndarray) -> str:
    width = max(len(str(int(v))) for v in m.ravel())
    lines = [f"{name}:"]
    for u, row in enumerate(m):
        cells = " ".join(f"{int(v):>{width}}" for v in row)
        lines.append(f"  L{u + 1:<3} {cells}")
    return "\n".join(lines)


def _decoder_config(args) -> decoder.DecoderConfig:
    if args.arith == "float":
        if args.qformat is not None:
            raise DataError("--qformat only applies to --arith fixed")
        return decoder.DecoderConfig(
            scale=args.scale, t_max=args.iters, arithmetic=decoder.FLOAT64
        )
    qf = QFormat.parse(args.qformat or "6.4")
    return decoder.DecoderConfig(
        scale=args.scale, t_max=args.iters, arithmetic=decoder.FIXED, qformat=qf
    )


def _cmd_expand(args):
    base = _load_code_file(args.code)
    h = code_model.expand(base)
    with _open_out(args) as fh:
        fh.write(code_model.to_alist(h))
        if fh is not sys.stdout:
            print(f"wrote {h.m}x{h.n} matrix to {args.out}", file=sys.stderr)
    return 0


def _cmd_compact(args):
    base = _load_code_file(args.code)
    code = compact.build_compact(base)
    lam = compact.compaction_ratio(code)
    with _open_out(args) as fh:
        if args.csv:
            for name, m in (("beta_I", code.beta_I), ("beta_S", code.beta_S)):
                for u, row in enumerate(m):
                    fh.write(f"{name},{u}," + ",".join(str(int(v)) for v in row) + "\n")
        else:
            fh.write(_matrix_text("beta_I", code.beta_I) + "\n")
            fh.write(_matrix_text("beta_S", code.beta_S) + "\n")
        fh.write(f"J = {code.J}\n")
        fh.write(f"lambda = {lam} ({float(lam):.4f}), throughput gain 1/lambda = {Fraction(1, 1) / lam}\n")
    return 0


def _cmd_schedule(args):
    base = _load_code_file(args.code)
    code = compact.build_compact(base)
    try:
        if args.mode == "1x":
            size = 1 if args.superlayer == "auto" else int(args.superlayer)
            plan = schedule.rearrange(code, size, mode=schedule.SERIAL_1X)
        elif args.superlayer == "auto":
            _, plan = schedule.select_superlayer_size(code)
        else:
            plan = schedule.rearrange(code, int(args.superlayer), mode=schedule.PIPELINED_2X)
    except schedule.ScheduleError as exc:
        raise DataError(str(exc)) from exc

    slots = schedule.slot_count(code, plan)
    with _open_out(args) as fh:
        fh.write(f"mode = {plan.mode}\n")
        fh.write(f"superlayer_size = {plan.superlayer_size}\n")
        if plan.mode == schedule.PIPELINED_2X:
            eta = schedule.pipelining_efficiency(plan.superlayer_size)
            fh.write(f"eta_p = {eta} ({float(eta):.4f})\n")
        fh.write(_matrix_text("beta_I'", plan.beta_I_prime) + "\n")
        fh.write(_matrix_text("beta_S'", plan.beta_S_prime) + "\n")
        fh.write(f"slots_per_iteration = {slots}\n")
        serial = code.I * 2 * code.J
        fh.write(f"speedup_vs_serial = {Fraction(serial, slots)} ({serial / slots:.4f})\n")
        fh.write(f"hazards = {len(plan.hazards)}\n")
        for u, w, u2, w2, b in plan.hazards:
            fh.write(f"  L{u + 1} slot {w + 1} -> L{u2 + 1} slot {w2 + 1} (block column {b + 1})\n")
        if args.fclk:
            model = schedule.ThroughputModel(
                f_clk_hz=args.fclk,
                n_bits=code.n,
                iterations=args.iters,
                slots_per_iteration=slots,
            )
            fh.write(f"modeled_throughput_bps = {schedule.throughput(model):.0f}\n")
    return 0


def _read_llrs(args, n: int) -> np.ndarray:
    try:
        if args.raw:
            with open(args.llr, "rb") as fh:
                llr = np.frombuffer(fh.read(), dtype="<f4").astype(np.float64)
        else:
            with open(args.llr, encoding="utf-8") as fh:
                llr = np.array([float(line) for line in fh if line.strip()])
    except OSError as exc:
        raise DataError(f"cannot read LLR file {args.llr}: {exc}") from exc
    except ValueError as exc:
        raise DataError(f"{args.llr}: {exc}") from exc
    if llr.shape != (n,):
        raise DataError(f"expected {n} LLR values, got {llr.shape[0]}")
    return llr


def _cmd_decode(args):
    base = _load_code_file(args.code)
    code = compact.build_compact(base)
    cfg = _decoder_config(args)
    llr = _read_llrs(args, code.n)
    result = decoder.decode(llr, code, cfg)
    with _open_out(args) as fh:
        fh.write("".join(str(int(b)) for b in result.v_hat) + "\n")
        fh.write(f"iterations = {result.iterations}\n")
        fh.write(f"converged = {str(result.converged).lower()}\n")
    return 0


def _parse_grid(spec: str) -> tuple:
    try:
        lo, step, hi = (float(p) for p in spec.split(":"))
    except ValueError:
        raise DataError(f"--ebno expects LO:STEP:HI, got {spec!r}") from None
    if step <= 0 or hi < lo:
        raise DataError("--ebno grid must be ascending with positive step")
    grid = []
    x = lo
    while x <= hi + 1e-9:
        grid.append(round(x, 9))
        x += step
    return tuple(grid)


def _cmd_ber(args):
    base = _load_code_file(args.code)
    code = compact.build_compact(base)
    cfg = _decoder_config(args)
    ch_cfg = channel.ChannelConfig(
        ebno_db=_parse_grid(args.ebno),
        rate=args.rate,
        seed=args.seed,
        max_frames=args.max_frames,
        min_bit_errors=args.min_errors,
    )
    results = channel.run_ber(code, cfg, ch_cfg, workers=args.workers)
    with _open_out(args) as fh:
        fh.write(channel.results_to_csv(results))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="qcldpc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_code(p):
        p.add_argument(
            "--code", required=True,
            help="base-matrix file, or one of: " + ", ".join(sorted(_BUNDLED)),
        )
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("expand", help="expand a base matrix and emit alist")
    add_code(p)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("compact", help="print the block index/shift matrices")
    add_code(p)
    p.add_argument("--csv", action="store_true", help="emit CSV rows instead of aligned text")
    p.set_defaults(func=_cmd_compact)

    p = sub.add_parser("schedule", help="superlayer plan, hazards and timing model")
    add_code(p)
    p.add_argument("--superlayer", default="auto", help='layers per superlayer, or "auto"')
    p.add_argument("--mode", choices=("1x", "2x"), default="2x")
    p.add_argument("--fclk", type=float, help="clock frequency in Hz for the throughput model")
    p.add_argument("--iters", type=int, default=8, help="decoding iterations for the model")
    p.set_defaults(func=_cmd_schedule)

    def add_decoder_flags(p):
        p.add_argument("--iters", type=int, default=8)
        p.add_argument("--arith", choices=("float", "fixed"), default="float")
        p.add_argument("--qformat", help='fixed-point format "I.F" (fixed mode only)')
        p.add_argument("--scale", type=float, default=0.75)

    p = sub.add_parser("decode", help="decode one LLR vector")
    add_code(p)
    p.add_argument("--llr", required=True, help="one float per line, or raw with --raw")
    p.add_argument("--raw", action="store_true", help="LLR file is little-endian float32")
    add_decoder_flags(p)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("ber", help="Monte-Carlo BER/FER sweep, CSV output")
    add_code(p)
    p.add_argument("--ebno", required=True, help="Eb/N0 grid as LO:STEP:HI (dB)")
    add_decoder_flags(p)
    p.add_argument("--rate", type=float, default=0.5, help="code rate for the noise variance")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--min-errors", type=int, default=200)
    p.add_argument("--max-frames", type=int, default=200_000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_ber)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except DataError as exc:
        print(f"qcldpc: error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except ValueError as exc:
        print(f"qcldpc: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
