"""Superlayer partitioning, block staggering and the slot-level timing model.

Two-layer pipelining overlaps the local pass of layer u with the global pass
of layer u+1 inside a superlayer.  A shared block column is safe only if the
later layer touches it at a strictly later slot; rearrangement permutes each
layer's slots to make that hold wherever possible, and reports the remaining
conflicts as hazards.  Hazards are a timing-model artifact: the decoder
itself always computes exact sequential-layered results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .compact import CompactCode

SERIAL_1X = "serial_1x"
PIPELINED_2X = "pipelined_2x"


class ScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class PipelinePlan:
    """Rearranged schedule for one superlayer size.

    order[u, w_orig] gives the slot where the entry originally at column
    w_orig of layer u ended up.  hazards lists the unresolved adjacent-layer
    dependencies as (layer u, slot w, layer u+1, slot w2, block_column).
    """

    superlayer_size: int
    mode: str
    order: np.ndarray
    beta_I_prime: np.ndarray
    beta_S_prime: np.ndarray
    hazards: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class ThroughputModel:
    """Slot-level throughput model: T = F_c * n / (N_i * N_c)."""

    f_clk_hz: float
    n_bits: int
    iterations: int
    slots_per_iteration: int
    cycles_per_slot: int = 1

    def __post_init__(self):
        for name in ("f_clk_hz", "n_bits", "iterations", "slots_per_iteration", "cycles_per_slot"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def cycles_per_iteration(self) -> int:
        return self.slots_per_iteration * self.cycles_per_slot


def throughput(model: ThroughputModel) -> float:
    """Modeled decoder throughput in bits/s."""
    return model.f_clk_hz * model.n_bits / (model.iterations * model.cycles_per_iteration)


def pipelining_efficiency(superlayer_size: int) -> Fraction:
    """Layers processed per unit time per NPU array with 2-layer pipelining."""
    if superlayer_size < 1:
        raise ValueError("superlayer size must be >= 1")
    return Fraction(superlayer_size, superlayer_size + 1)


def _arrange_layer(blocks: list[int], prev_pos: dict[int, int]) -> list[int]:
    """Permute one layer's entries (blocks, -1 = padding) against the
    previous layer's placement.

    An entry whose block sits at slot w in the previous layer has release
    slot w+1; placing it earlier is a hazard.  The satisfiable subset is
    maximized by a backward greedy over slots (pick the largest eligible
    release last), then the concrete order is built front to back, always
    taking the lowest original index that keeps the rest feasible.
    Returns, per slot, the original index of the entry placed there.
    """
    J = len(blocks)
    release = [
        prev_pos[b] + 1 if (b >= 0 and b in prev_pos) else 0 for b in blocks
    ]

    # Backward greedy: which entries can meet their release slot at all.
    satisfied: set[int] = set()
    remaining = sorted(range(J), key=lambda e: (release[e], e))
    for slot in range(J - 1, -1, -1):
        eligible = [e for e in remaining if release[e] <= slot]
        if eligible:
            pick = max(eligible, key=lambda e: (release[e], e))
            satisfied.add(pick)
            remaining.remove(pick)

    # Forward construction, preserving ascending original order where the
    # release constraints of the still-unplaced satisfiable entries allow it.
    def feasible(pending: list[int], first_free_slot: int) -> bool:
        # Pending satisfiable entries may take the latest remaining slots.
        k = len(pending)
        slots = list(range(first_free_slot, J))[len(range(first_free_slot, J)) - k :]
        rel = sorted(release[e] for e in pending)
        return all(r <= s for r, s in zip(rel, slots))

    unplaced = list(range(J))
    result = []
    for slot in range(J):
        candidates = [
            e for e in unplaced if e not in satisfied or release[e] <= slot
        ]
        candidates.sort()
        for e in candidates:
            rest = [x for x in unplaced if x != e and x in satisfied]
            if feasible(rest, slot + 1):
                result.append(e)
                unplaced.remove(e)
                break
        else:  # pragma: no cover - J slots always fit J entries
            raise AssertionError("no placeable entry")
    return result


def _scan_hazards(code: CompactCode, beta_I_prime: np.ndarray, superlayer_size: int) -> list[tuple]:
    """Independent re-scan of the rearranged matrix for stagger violations."""
    hazards = []
    J = code.J
    for u in range(code.I - 1):
        if (u + 1) % superlayer_size == 0:
            continue  # superlayer boundary: pipeline restarts, no overlap
        pos_prev = {int(b): w for w, b in enumerate(beta_I_prime[u]) if b >= 0}
        for w2 in range(J):
            b = int(beta_I_prime[u + 1, w2])
            if b >= 0 and b in pos_prev and not pos_prev[b] < w2:
                hazards.append((u, pos_prev[b], u + 1, w2, b))
    return hazards


def rearrange(code: CompactCode, superlayer_size: int, mode: str = PIPELINED_2X) -> PipelinePlan:
    """Build a pipeline plan for the given superlayer size.

    In serial mode the original slot order is kept and there is nothing to
    stagger.  In pipelined mode each layer after the first of its superlayer
    is permuted to minimize hazards against its predecessor.
    """
    if mode not in (SERIAL_1X, PIPELINED_2X):
        raise ScheduleError(f"unknown mode {mode!r}")
    I, J = code.I, code.J
    if superlayer_size < 1 or I % superlayer_size != 0:
        raise ScheduleError(
            f"superlayer size {superlayer_size} does not divide the layer count {I}"
        )

    order = np.empty((I, J), dtype=np.int64)
    beta_I_prime = np.empty_like(code.beta_I)
    beta_S_prime = np.empty_like(code.beta_S)

    for u in range(I):
        first_of_superlayer = u % superlayer_size == 0
        if mode == SERIAL_1X or first_of_superlayer:
            placement = list(range(J))
        else:
            prev_pos = {int(b): w for w, b in enumerate(beta_I_prime[u - 1]) if b >= 0}
            placement = _arrange_layer([int(b) for b in code.beta_I[u]], prev_pos)
        for slot, orig in enumerate(placement):
            order[u, orig] = slot
            beta_I_prime[u, slot] = code.beta_I[u, orig]
            beta_S_prime[u, slot] = code.beta_S[u, orig]

    hazards = [] if mode == SERIAL_1X else _scan_hazards(code, beta_I_prime, superlayer_size)
    return PipelinePlan(
        superlayer_size=superlayer_size,
        mode=mode,
        order=order,
        beta_I_prime=beta_I_prime,
        beta_S_prime=beta_S_prime,
        hazards=tuple(hazards),
    )


def superlayer_candidates(I: int) -> list[int]:
    """Even divisors of the layer count, excluding the full count itself."""
    return [x for x in range(2, I, 2) if I % x == 0]


def select_superlayer_size(code: CompactCode) -> tuple[int, PipelinePlan]:
    """Largest admissible superlayer size (maximizing efficiency), with its plan."""
    if code.I % 2 != 0:
        raise ScheduleError(
            f"layer count {code.I} is odd; two-layer pipelining needs an even count "
            "(use serial_1x mode)"
        )
    candidates = superlayer_candidates(code.I)
    if not candidates:
        raise ScheduleError(
            f"no admissible superlayer size for {code.I} layers (use serial_1x mode)"
        )
    l_star = max(candidates, key=pipelining_efficiency)
    return l_star, rearrange(code, l_star, mode=PIPELINED_2X)


def slot_count(code: CompactCode, plan: PipelinePlan) -> int:
    """NPU slots per decoding iteration under the plan's mode.

    Serial: each layer runs J global slots then J local slots.  Pipelined:
    a superlayer of L layers takes (L+1)*J slots, the extra J being the
    drain at the superlayer boundary.
    """
    if plan.mode == SERIAL_1X:
        return code.I * 2 * code.J
    L = plan.superlayer_size
    return (code.I // L) * (L + 1) * code.J
