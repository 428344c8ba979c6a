"""Compact block-index / block-shift representation of a base matrix.

Only valid (non-zero) blocks are listed, one row per layer, left to right.
Rows shorter than the maximum row weight J are right-padded with -1 so that
every layer schedules the same number of slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .code_model import BaseMatrix


@dataclass(frozen=True)
class CompactCode:
    """Valid-blocks-only view of a base matrix.

    beta_I holds 0-based block-column indices, beta_S the matching shift
    values; both are I x J with -1 marking padding slots.
    """

    beta_I: np.ndarray
    beta_S: np.ndarray
    z: int
    n_b: int

    def __post_init__(self):
        for name in ("beta_I", "beta_S"):
            a = np.asarray(getattr(self, name), dtype=np.int64)
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        if self.beta_I.shape != self.beta_S.shape:
            raise ValueError("beta_I and beta_S shapes differ")
        if not np.array_equal(self.beta_I < 0, self.beta_S < 0):
            raise ValueError("padding slots of beta_I and beta_S disagree")

    @property
    def I(self) -> int:  # noqa: E743 - established symbol for the layer count
        return self.beta_I.shape[0]

    @property
    def J(self) -> int:
        return self.beta_I.shape[1]

    @property
    def n(self) -> int:
        return self.n_b * self.z

    def layer_slots(self, u: int) -> list[tuple[int, int, int]]:
        """Valid (slot, block_column, shift) triples of layer u, in slot order."""
        return [
            (w, int(self.beta_I[u, w]), int(self.beta_S[u, w]))
            for w in range(self.J)
            if self.beta_I[u, w] >= 0
        ]


def build_compact(base: BaseMatrix) -> CompactCode:
    """Scan each layer left to right, collecting (index, shift) of valid blocks."""
    rows_i, rows_s = [], []
    for u in range(base.m_b):
        idx = np.flatnonzero(base.entries[u] >= 0)
        rows_i.append(idx)
        rows_s.append(base.entries[u, idx])
    J = max((len(r) for r in rows_i), default=0)
    beta_I = np.full((base.m_b, J), -1, dtype=np.int64)
    beta_S = np.full((base.m_b, J), -1, dtype=np.int64)
    for u, (bi, bs) in enumerate(zip(rows_i, rows_s)):
        beta_I[u, : len(bi)] = bi
        beta_S[u, : len(bs)] = bs
    return CompactCode(beta_I=beta_I, beta_S=beta_S, z=base.z, n_b=base.n_b)


def compaction_ratio(code: CompactCode) -> Fraction:
    """J / n_b as an exact rational; 1/ratio is the scheduling throughput gain."""
    return Fraction(code.J, code.n_b)


def layer_dependency(code: CompactCode, u: int, u2: int) -> set[int]:
    """Block columns shared by layers u and u2; empty set means independent."""
    if u == u2:
        raise ValueError("layer dependency is defined for distinct layers")
    for layer in (u, u2):
        if not 0 <= layer < code.I:
            raise ValueError(f"layer {layer} outside 0..{code.I - 1}")
    a = set(int(b) for b in code.beta_I[u] if b >= 0)
    b = set(int(b) for b in code.beta_I[u2] if b >= 0)
    return a & b
