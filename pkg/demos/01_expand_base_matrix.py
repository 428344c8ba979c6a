"""Walk through base-matrix expansion on the bundled 802.11n rate-1/2 code.

A QC-LDPC parity-check matrix is stored as a small grid of circulant shift
values; -1 marks an all-zero block.  Expansion replaces each shift s with a
z x z identity rotated s places.
"""

import numpy as np

from qcldpc import degrees, expand, wifi_base_matrix

# %% The base matrix: 12 x 24 grid of shifts, z = 81
base = wifi_base_matrix(81)
print(f"base matrix: {base.m_b} x {base.n_b}, z = {base.z}")
print(f"valid blocks: {(base.entries >= 0).sum()} of {base.entries.size}")
print("first row of shifts:", base.entries[0].tolist())

# %% Expand to the full sparse parity-check matrix
h = expand(base)
print(f"\nexpanded: {h.m} x {h.n} parity-check matrix")
ones = sum(len(cols) for cols in h.row_adjacency)
print(f"density: {ones / (h.m * h.n):.4%}")

# %% Check-node and variable-node degree profiles
d_c, d_v = degrees(h)


def profile(d):
    vals, counts = np.unique(d, return_counts=True)
    return dict(zip(vals.tolist(), counts.tolist()))


print("\ncheck degrees:", profile(d_c))
print("variable degrees:", profile(d_v))

# %% Every valid block expands to a permutation matrix: one 1 per row/column
first_block_rows = h.row_adjacency[: base.z]
in_block = [c for cols in first_block_rows for c in cols if c < base.z]
print(f"\nblock (0,0): {len(in_block)} ones across {base.z} rows, "
      f"all distinct: {len(set(in_block)) == base.z}")
