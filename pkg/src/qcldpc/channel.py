"""BPSK/AWGN channel and a reproducible Monte-Carlo BER/FER harness.

Simulation sends the all-zero codeword (valid for a linear code over a
symmetric channel with a sign-symmetric decoder), so bit errors are simply
the ones in the decoder output.  Every frame draws its noise from a
counter-based Philox stream keyed by (seed, grid point, frame index), and
the stopping rule fires only at fixed chunk boundaries, so results are
byte-identical no matter how many workers run the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .compact import CompactCode
from .decoder import DecoderConfig, decode_batch

CHUNK_FRAMES = 512  # stopping-rule granularity; fixed so worker count cannot matter


@dataclass(frozen=True)
class ChannelConfig:
    ebno_db: tuple
    rate: float
    seed: int
    max_frames: int = 200_000
    min_bit_errors: int = 200

    def __post_init__(self):
        object.__setattr__(self, "ebno_db", tuple(float(e) for e in self.ebno_db))
        if not 0.0 < self.rate < 1.0:
            raise ValueError("code rate must be in (0, 1)")
        if list(self.ebno_db) != sorted(self.ebno_db):
            raise ValueError("Eb/N0 grid must be ascending")
        if self.max_frames < 1 or self.min_bit_errors < 1:
            raise ValueError("stopping rules must be positive")


@dataclass(frozen=True)
class TrialResult:
    ebno_db: float
    frames: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    avg_iterations: float


def noise_sigma2(ebno_db: float, rate: float) -> float:
    return 1.0 / (2.0 * rate * 10.0 ** (ebno_db / 10.0))


def frame_rng(seed: int, point: int, frame: int) -> np.random.Generator:
    """Counter-based substream for one frame; independent of evaluation order."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, point, frame]))


def awgn_llr(ebno_db: float, rate: float, rng: np.random.Generator, n: int) -> np.ndarray:
    """Channel LLRs for the all-zero codeword: y = +1 + noise, LLR = 2y/sigma^2."""
    sigma2 = noise_sigma2(ebno_db, rate)
    y = 1.0 + rng.normal(0.0, math.sqrt(sigma2), size=n)
    return 2.0 * y / sigma2


def qfunc(x: float) -> float:
    """Gaussian tail probability Q(x)."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def uncoded_bpsk_ber(ebno_db: float) -> float:
    """Closed-form uncoded BPSK bit error rate at the given Eb/N0."""
    return qfunc(math.sqrt(2.0 * 10.0 ** (ebno_db / 10.0)))


def _chunk_counts(code, dec_cfg, ebno_db, rate, seed, point, lo, hi):
    """Decode frames [lo, hi) of one grid point; return error counters."""
    llrs = np.stack(
        [awgn_llr(ebno_db, rate, frame_rng(seed, point, f), code.n) for f in range(lo, hi)]
    )
    bits, iters, _ = decode_batch(llrs, code, dec_cfg)
    per_frame = bits.sum(axis=1)
    return int(per_frame.sum()), int((per_frame > 0).sum()), int(iters.sum())


def run_ber(
    code: CompactCode,
    dec_cfg: DecoderConfig,
    ch_cfg: ChannelConfig,
    workers: int = 1,
) -> list[TrialResult]:
    """Monte-Carlo sweep over the Eb/N0 grid.

    Each point stops at the first chunk boundary where min_bit_errors is
    reached, or at max_frames.  Chunks are decoded in waves of `workers` and
    accumulated in frame order, so speculative chunks computed past the
    stopping point are simply discarded.
    """
    results = []
    for point, ebno in enumerate(ch_cfg.ebno_db):
        bounds = [
            (lo, min(lo + CHUNK_FRAMES, ch_cfg.max_frames))
            for lo in range(0, ch_cfg.max_frames, CHUNK_FRAMES)
        ]
        bit_errors = frame_errors = frames = iters_sum = 0

        def accumulate(counts, lo, hi):
            nonlocal bit_errors, frame_errors, frames, iters_sum
            bit_errors += counts[0]
            frame_errors += counts[1]
            iters_sum += counts[2]
            frames += hi - lo
            return bit_errors >= ch_cfg.min_bit_errors

        if workers <= 1:
            for lo, hi in bounds:
                counts = _chunk_counts(
                    code, dec_cfg, ebno, ch_cfg.rate, ch_cfg.seed, point, lo, hi
                )
                if accumulate(counts, lo, hi):
                    break
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                stop = False
                for wave_start in range(0, len(bounds), workers):
                    wave = bounds[wave_start : wave_start + workers]
                    futures = [
                        pool.submit(
                            _chunk_counts,
                            code, dec_cfg, ebno, ch_cfg.rate, ch_cfg.seed, point, lo, hi,
                        )
                        for lo, hi in wave
                    ]
                    for fut, (lo, hi) in zip(futures, wave):
                        if accumulate(fut.result(), lo, hi):
                            stop = True
                            break
                    if stop:
                        break

        results.append(
            TrialResult(
                ebno_db=ebno,
                frames=frames,
                bit_errors=bit_errors,
                frame_errors=frame_errors,
                ber=bit_errors / (frames * code.n),
                fer=frame_errors / frames,
                avg_iterations=iters_sum / frames,
            )
        )
    return results


CSV_HEADER = "ebno_db,frames,bit_errors,frame_errors,ber,fer,avg_iters"


def results_to_csv(results: list[TrialResult]) -> str:
    lines = [CSV_HEADER]
    for r in results:
        lines.append(
            f"{r.ebno_db:.2f},{r.frames},{r.bit_errors},{r.frame_errors},"
            f"{r.ber:.6e},{r.fer:.6e},{r.avg_iterations:.4f}"
        )
    return "\n".join(lines) + "\n"


def ebno_at_ber(points: list[tuple[float, float]], target: float) -> float:
    """Eb/N0 where a BER curve crosses `target`, by log-linear interpolation.

    Points are (ebno_db, ber) with ber decreasing along the grid; zero-BER
    points are dropped.  If the target is not bracketed, the nearest segment
    is extended (log-linear extrapolation).
    """
    pts = [(e, b) for e, b in points if b > 0.0]
    if len(pts) < 2:
        raise ValueError("need at least two points with nonzero BER")
    logs = [(e, math.log10(b)) for e, b in pts]
    lt = math.log10(target)
    seg = None
    for (e0, l0), (e1, l1) in zip(logs, logs[1:]):
        if (l0 - lt) * (l1 - lt) <= 0.0:
            seg = ((e0, l0), (e1, l1))
            break
    if seg is None:
        seg = (logs[0], logs[1]) if lt > logs[0][1] else (logs[-2], logs[-1])
    (e0, l0), (e1, l1) = seg
    if l1 == l0:
        return (e0 + e1) / 2.0
    return e0 + (lt - l0) * (e1 - e0) / (l1 - l0)
