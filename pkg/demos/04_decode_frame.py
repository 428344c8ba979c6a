"""Decode single frames with the layered scaled min-sum decoder.

Shows convergence on a clean frame, correction of a flipped bit, and the
float vs fixed-point arithmetic modes side by side.
"""

import numpy as np

from qcldpc import (
    FIXED,
    DecoderConfig,
    QFormat,
    awgn_llr,
    build_compact,
    decode,
    frame_rng,
    wifi_base_matrix,
)

code = build_compact(wifi_base_matrix(27))
print(f"code: n = {code.n}, {code.I} layers")

# %% A noiseless all-zero frame converges in a single iteration
clean = decode(np.full(code.n, 4.0), code, DecoderConfig())
print(f"\nclean frame: converged={clean.converged} after {clean.iterations} iteration(s)")

# %% One flipped sign is corrected easily
llr = np.full(code.n, 4.0)
llr[100] = -4.0
res = decode(llr, code, DecoderConfig(t_max=8))
print(f"one flip: converged={res.converged} after {res.iterations} iteration(s), "
      f"errors left: {res.v_hat.sum()}")

# %% A noisy channel frame, float vs 10-bit fixed point
noisy = awgn_llr(2.0, 0.5, frame_rng(seed=7, point=0, frame=0), code.n)
for cfg in (
    DecoderConfig(t_max=8),
    DecoderConfig(t_max=8, arithmetic=FIXED, qformat=QFormat(6, 4)),
):
    r = decode(noisy, code, cfg)
    print(f"{cfg.arithmetic:>7}: converged={r.converged} iters={r.iterations} "
          f"bit errors={r.v_hat.sum()}")
