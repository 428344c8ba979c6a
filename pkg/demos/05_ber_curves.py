"""Monte-Carlo BER sweep: float vs fixed point vs the uncoded baseline.

Runs the n = 648 code over a short Eb/N0 grid.  Results are reproducible:
each frame's noise comes from a counter-based stream keyed by
(seed, grid point, frame index), so worker count never changes the numbers.
Pass --png FILE to also plot the curves (needs matplotlib).
"""

import argparse

from qcldpc import (
    FIXED,
    ChannelConfig,
    DecoderConfig,
    QFormat,
    build_compact,
    results_to_csv,
    run_ber,
    uncoded_bpsk_ber,
    wifi_base_matrix,
)

parser = argparse.ArgumentParser()
parser.add_argument("--workers", type=int, default=2)
parser.add_argument("--png", help="write a BER plot to this file")
args = parser.parse_args()

code = build_compact(wifi_base_matrix(27))
ch = ChannelConfig(
    ebno_db=(1.0, 1.5, 2.0, 2.5, 3.0), rate=0.5, seed=1,
    max_frames=20_000, min_bit_errors=200,
)

# %% Sweep three decoder configurations
configs = {
    "float 8it": DecoderConfig(t_max=8),
    "fixed 8it": DecoderConfig(t_max=8, arithmetic=FIXED, qformat=QFormat(6, 0)),
    "fixed 4it": DecoderConfig(t_max=4, arithmetic=FIXED, qformat=QFormat(6, 0)),
}
curves = {}
for name, cfg in configs.items():
    curves[name] = run_ber(code, cfg, ch, workers=args.workers)
    print(f"--- {name} ---")
    print(results_to_csv(curves[name]))

# %% Closed-form uncoded BPSK reference
print("uncoded BPSK:")
for e in ch.ebno_db:
    print(f"  {e:.1f} dB  BER {uncoded_bpsk_ber(e):.3e}")

# %% Optional plot
if args.png:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots()
    for name, rs in curves.items():
        ax.semilogy([r.ebno_db for r in rs], [max(r.ber, 1e-9) for r in rs],
                    marker="o", label=name)
    ax.semilogy(ch.ebno_db, [uncoded_bpsk_ber(e) for e in ch.ebno_db],
                "k--", label="uncoded BPSK")
    ax.set_xlabel("Eb/N0 (dB)")
    ax.set_ylabel("BER")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.savefig(args.png, dpi=150, bbox_inches="tight")
    print(f"wrote {args.png}")
