"""Signed fixed-point arithmetic with saturation.

Values are stored as raw integers scaled by 2**frac_bits.  Quantization
rounds to nearest with ties away from zero; additions saturate at the rails
instead of wrapping (wraparound would flip LLR signs).  The 0.75 scaling used
by the decoder is (raw * 3) >> 2 with rounding toward zero.

The array helpers (*_raw) operate on plain integer ndarrays and are what the
decoder uses; the scalar Fixed wrapper is for convenience and tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class QFormat:
    """int_bits integer bits (sign included) plus frac_bits fractional bits."""

    int_bits: int
    frac_bits: int

    def __post_init__(self):
        if self.int_bits < 1:
            raise ValueError("need at least the sign bit")
        if self.frac_bits < 0:
            raise ValueError("frac_bits must be >= 0")

    @property
    def width(self) -> int:
        return self.int_bits + self.frac_bits

    @property
    def raw_min(self) -> int:
        return -(1 << (self.width - 1))

    @property
    def raw_max(self) -> int:
        return (1 << (self.width - 1)) - 1

    @property
    def step(self) -> float:
        return 2.0 ** -self.frac_bits

    @classmethod
    def parse(cls, text: str) -> "QFormat":
        """Parse the "I.F" flag syntax, e.g. "6.4"."""
        try:
            int_bits, frac_bits = (int(p) for p in text.split("."))
        except ValueError:
            raise ValueError(f"expected I.F fixed-point format, got {text!r}") from None
        return cls(int_bits, frac_bits)


def quantize_raw(x, q: QFormat) -> np.ndarray:
    """Round-to-nearest (ties away from zero), then saturate."""
    v = np.asarray(x, dtype=np.float64) * (1 << q.frac_bits)
    raw = np.trunc(v + np.copysign(0.5, v)).astype(np.int64)
    return np.clip(raw, q.raw_min, q.raw_max).astype(np.int32)


def sat_add_raw(a, b, q: QFormat) -> np.ndarray:
    wide = np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)
    return np.clip(wide, q.raw_min, q.raw_max).astype(np.int32)


def sat_sub_raw(a, b, q: QFormat) -> np.ndarray:
    wide = np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64)
    return np.clip(wide, q.raw_min, q.raw_max).astype(np.int32)


def scale_3q4_raw(a, q: QFormat) -> np.ndarray:
    """Multiply by 0.75: (raw * 3) >> 2, rounding toward zero, saturated."""
    t = np.asarray(a, dtype=np.int64) * 3
    shifted = np.where(t >= 0, t >> 2, -((-t) >> 2))
    return np.clip(shifted, q.raw_min, q.raw_max).astype(np.int32)


def to_float(raw, q: QFormat) -> np.ndarray:
    return np.asarray(raw, dtype=np.float64) * q.step


@dataclass(frozen=True)
class Fixed:
    """A single saturating fixed-point value."""

    raw: int
    format: QFormat

    def __post_init__(self):
        if not self.format.raw_min <= self.raw <= self.format.raw_max:
            raise ValueError(f"raw value {self.raw} outside format range")

    @property
    def value(self) -> float:
        return self.raw * self.format.step

    def _check(self, other: "Fixed"):
        if other.format != self.format:
            raise ValueError("mixed fixed-point formats")

    def __add__(self, other: "Fixed") -> "Fixed":
        self._check(other)
        return Fixed(int(sat_add_raw(self.raw, other.raw, self.format)), self.format)

    def __sub__(self, other: "Fixed") -> "Fixed":
        self._check(other)
        return Fixed(int(sat_sub_raw(self.raw, other.raw, self.format)), self.format)

    def __neg__(self) -> "Fixed":
        return Fixed(int(sat_sub_raw(0, self.raw, self.format)), self.format)

    def scale_3q4(self) -> "Fixed":
        return Fixed(int(scale_3q4_raw(self.raw, self.format)), self.format)


def quantize(x: float, q: QFormat) -> Fixed:
    return Fixed(int(quantize_raw(x, q)), q)
