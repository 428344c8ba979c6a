"""Build the compact block-index / block-shift representation.

Only a third of the 802.11n base matrix holds valid blocks.  Storing just
the valid block coordinates shrinks the per-layer schedule from 24 slots to
8 and triples the modeled decoder throughput.
"""

from qcldpc import build_compact, compaction_ratio, layer_dependency, wifi_base_matrix

# %% Compact the z = 81 code
code = build_compact(wifi_base_matrix(81))
print(f"layers I = {code.I}, slots per layer J = {code.J}, n = {code.n}")

# %% Index and shift rows for the first layer
print("\nlayer 1 slots (slot, block column, shift):")
for slot, block, shift in code.layer_slots(0):
    print(f"  w={slot}  b={block:>2}  s={shift}")

# %% Compaction ratio and the throughput gain it buys
lam = compaction_ratio(code)
print(f"\nlambda = {lam} = {float(lam):.4f}, gain 1/lambda = {1 / lam}")

# %% Layers sharing a block column cannot be processed concurrently
for u2 in (3, 6, 9):
    shared = layer_dependency(code, 0, u2)
    print(f"layers 1 and {u2 + 1} share block columns {sorted(shared)}")
