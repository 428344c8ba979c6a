"""Row-layered scaled min-sum decoding driven by the compact representation.

Each layer is processed in two passes over its valid block slots.  The global
pass accumulates the first and second minimum of |q|, the sign parity and the
slot attaining the minimum; the local pass turns those into the per-slot
exclusion outputs, scales them and writes the updated APP values back through
the inverse rotation.  All z rows of a layer are updated in parallel
(vectorized), and an optional leading frame axis lets many codewords share
one pass through the schedule with identical per-frame arithmetic.

Check rows of degree < 2 are outside the algorithm's domain (the exclusion
minimum is undefined there).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .compact import CompactCode
from .fixedpoint import QFormat, quantize_raw, sat_add_raw, sat_sub_raw, scale_3q4_raw

FLOAT64 = "float64"
FIXED = "fixed"


@dataclass(frozen=True)
class DecoderConfig:
    scale: float = 0.75
    t_max: int = 8
    arithmetic: str = FLOAT64
    qformat: QFormat | None = None
    early_termination: bool = True

    def __post_init__(self):
        if not 0.0 < self.scale <= 1.0:
            raise ValueError("scale must be in (0, 1]")
        if self.t_max < 1:
            raise ValueError("t_max must be >= 1")
        if self.arithmetic not in (FLOAT64, FIXED):
            raise ValueError(f"unknown arithmetic {self.arithmetic!r}")
        if self.arithmetic == FIXED:
            if self.qformat is None:
                raise ValueError("fixed arithmetic requires a qformat")
            if self.scale != 0.75:
                raise ValueError("fixed arithmetic implements the 0.75 scaling only")


@dataclass
class DecoderState:
    """APP values plus the stored CTV message per valid block slot."""

    app: np.ndarray  # (..., n), float64 or int32 raw
    ctv: np.ndarray  # (..., I, J, z); padding slots stay zero and unread
    iteration: int = 0
    last_syndrome_weight: int | None = None


def init(llr: np.ndarray, code: CompactCode, cfg: DecoderConfig) -> DecoderState:
    """APP <- channel LLRs (quantized first in fixed mode), CTV <- 0."""
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape[-1] != code.n:
        raise ValueError(f"expected LLR vector(s) of length {code.n}, got {llr.shape[-1]}")
    lead = llr.shape[:-1]
    if cfg.arithmetic == FIXED:
        app = quantize_raw(llr, cfg.qformat)
        ctv = np.zeros(lead + (code.I, code.J, code.z), dtype=np.int32)
    else:
        app = llr.copy()
        ctv = np.zeros(lead + (code.I, code.J, code.z), dtype=np.float64)
    return DecoderState(app=app, ctv=ctv)


def barrel_shift(block: np.ndarray, s: int) -> np.ndarray:
    """Rotate so that row r sees the value at column (r + s) mod z."""
    return np.roll(block, -s, axis=-1)


def _ctv_messages(q: np.ndarray, cfg: DecoderConfig) -> np.ndarray:
    """Two-pass exclusion min-sum over the slot-major stack q of shape (S, ..., z).

    Equivalent, slot for slot, to a * prod_{k != here} sign(q_k)
    * min_{k != here} |q_k|, with sign(0) = +1 and first-slot tie breaking
    for the minimum (ties make the first and second minimum coincide, so the
    output matches the brute-force exclusion min either way).
    """
    S = q.shape[0]
    absq = np.abs(q)
    first = absq.min(axis=0)
    argmin = absq.argmin(axis=0)
    masked = absq.copy()
    big = np.inf if q.dtype.kind == "f" else np.iinfo(q.dtype).max
    np.put_along_axis(masked, argmin[None], big, axis=0)
    second = masked.min(axis=0)

    neg = q < 0
    sign_parity = neg.sum(axis=0) & 1  # 1 where the full sign product is negative
    slot_idx = np.arange(S).reshape((S,) + (1,) * (q.ndim - 1))
    q_min = np.where(slot_idx == argmin, second, first)
    # Excluding a slot's own sign from the product: parity XOR own sign bit.
    negate = (sign_parity[None] ^ neg).astype(bool)

    if cfg.arithmetic == FIXED:
        mag = scale_3q4_raw(q_min, cfg.qformat)
        return np.where(negate, -mag, mag).astype(np.int32)
    r = cfg.scale * q_min
    return np.where(negate, -r, r)


def layer_update(state: DecoderState, code: CompactCode, u: int, cfg: DecoderConfig) -> DecoderState:
    """One layer's global + local pass; mutates and returns the state."""
    if not 0 <= u < code.I:
        raise ValueError(f"layer {u} outside 0..{code.I - 1}")
    slots = code.layer_slots(u)
    if not slots:
        return state
    z = code.z
    app, ctv = state.app, state.ctv
    fixed = cfg.arithmetic == FIXED

    q_stack = []
    for w, b, s in slots:
        p = barrel_shift(app[..., b * z : (b + 1) * z], s)
        r_old = ctv[..., u, w, :]
        q_stack.append(sat_sub_raw(p, r_old, cfg.qformat) if fixed else p - r_old)
    q = np.stack(q_stack, axis=0)

    r_new = _ctv_messages(q, cfg)

    for idx, (w, b, s) in enumerate(slots):
        p_new = (
            sat_add_raw(q[idx], r_new[idx], cfg.qformat) if fixed else q[idx] + r_new[idx]
        )
        ctv[..., u, w, :] = r_new[idx]
        app[..., b * z : (b + 1) * z] = np.roll(p_new, s, axis=-1)
    return state


def hard_decision(state: DecoderState) -> np.ndarray:
    """Bit 0 for non-negative APP (positive LLR favors bit 0), else 1."""
    return (state.app < 0).astype(np.int8)


def syndrome_weight(code: CompactCode, bits: np.ndarray) -> np.ndarray | int:
    """Number of unsatisfied checks, computed layer by layer from the
    compact representation (no expanded matrix needed)."""
    bits = np.asarray(bits, dtype=np.int8)
    z = code.z
    weight = np.zeros(bits.shape[:-1], dtype=np.int64)
    for u in range(code.I):
        acc = np.zeros(bits.shape[:-1] + (z,), dtype=np.int8)
        for _, b, s in code.layer_slots(u):
            acc ^= barrel_shift(bits[..., b * z : (b + 1) * z], s)
        weight += acc.sum(axis=-1)
    return int(weight) if weight.ndim == 0 else weight


@dataclass(frozen=True)
class DecodeResult:
    v_hat: np.ndarray
    iterations: int
    converged: bool


def decode(llr: np.ndarray, code: CompactCode, cfg: DecoderConfig) -> DecodeResult:
    """Full layered decode of one codeword with optional early termination."""
    bits, iters, conv = decode_batch(np.asarray(llr, dtype=np.float64)[None, :], code, cfg)
    return DecodeResult(v_hat=bits[0], iterations=int(iters[0]), converged=bool(conv[0]))


def decode_batch(
    llrs: np.ndarray, code: CompactCode, cfg: DecoderConfig
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Decode many independent codewords in one vectorized sweep.

    Frames that pass the syndrome check are frozen and dropped from further
    iterations; per-frame results are bit-identical to decode() on the same
    input.  Returns (bits (F, n), iterations (F,), converged (F,)).
    """
    llrs = np.asarray(llrs, dtype=np.float64)
    if llrs.ndim != 2:
        raise ValueError("decode_batch expects a (frames, n) array")
    F = llrs.shape[0]
    state = init(llrs, code, cfg)
    app, ctv = state.app, state.ctv
    live = np.arange(F)

    out_bits = np.zeros((F, code.n), dtype=np.int8)
    out_iters = np.full(F, cfg.t_max, dtype=np.int64)
    out_conv = np.zeros(F, dtype=bool)

    t = 0
    for t in range(1, cfg.t_max + 1):
        sub = DecoderState(app=app, ctv=ctv)
        for u in range(code.I):
            layer_update(sub, code, u, cfg)
        if cfg.early_termination:
            bits = hard_decision(sub)
            done = np.asarray(syndrome_weight(code, bits)) == 0
            if done.any():
                out_bits[live[done]] = bits[done]
                out_iters[live[done]] = t
                out_conv[live[done]] = True
                keep = ~done
                app, ctv, live = app[keep], ctv[keep], live[keep]
                if live.size == 0:
                    return out_bits, out_iters, out_conv

    if live.size:
        final = DecoderState(app=app, ctv=ctv)
        bits = hard_decision(final)
        out_bits[live] = bits
        out_iters[live] = t
        if not cfg.early_termination:
            out_conv[live] = np.asarray(syndrome_weight(code, bits)) == 0
    return out_bits, out_iters, out_conv
