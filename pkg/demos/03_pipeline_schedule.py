"""Superlayer pipelining: pick a superlayer size, rearrange, count hazards.

Two pipelined processing stages let consecutive layers overlap, but only
inside a superlayer, and only when every shared block column is staggered
to a strictly later slot in the later layer.
"""

from qcldpc import (
    SERIAL_1X,
    ThroughputModel,
    build_compact,
    pipelining_efficiency,
    rearrange,
    select_superlayer_size,
    slot_count,
    superlayer_candidates,
    throughput,
    wifi_base_matrix,
)

code = build_compact(wifi_base_matrix(81))

# %% Candidate superlayer sizes are even divisors of the layer count
print("candidates:", superlayer_candidates(code.I))
for L in superlayer_candidates(code.I):
    print(f"  |L| = {L}: efficiency {pipelining_efficiency(L)}")

# %% The selector takes the largest feasible size
l_star, plan = select_superlayer_size(code)
print(f"\nselected |L| = {l_star}, eta_p = {pipelining_efficiency(l_star)}")

# %% Slot counts: serial baseline vs pipelined schedule
serial = slot_count(code, rearrange(code, l_star, mode=SERIAL_1X))
pipelined = slot_count(code, plan)
print(f"slots per iteration: serial {serial}, pipelined {pipelined}")
print(f"speedup: {serial / pipelined:.3f}x")

# %% Hazards left after rearrangement (unresolved stagger conflicts)
print(f"\nhazards after rearrangement: {len(plan.hazards)}")
for u, w, u2, w2, b in plan.hazards:
    print(f"  layer {u + 1} slot {w + 1} vs layer {u2 + 1} slot {w2 + 1}, block {b + 1}")

# %% Modeled information throughput at a 200 MHz clock, 8 iterations
model = ThroughputModel(
    f_clk_hz=200e6, n_bits=code.n, iterations=8, slots_per_iteration=pipelined
)
print(f"\nmodeled throughput: {throughput(model) / 1e6:.1f} Mb/s")
