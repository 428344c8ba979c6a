import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcldpc.fixedpoint import (
    Fixed,
    QFormat,
    quantize,
    quantize_raw,
    sat_add_raw,
    sat_sub_raw,
    scale_3q4_raw,
)

Q64 = QFormat(6, 4)


class TestQFormat:
    def test_width_and_range(self):
        assert Q64.width == 10
        assert Q64.raw_min == -512
        assert Q64.raw_max == 511

    def test_parse(self):
        assert QFormat.parse("6.4") == Q64

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            QFormat.parse("six")

    def test_invalid_fields(self):
        with pytest.raises(ValueError):
            QFormat(0, 4)
        with pytest.raises(ValueError):
            QFormat(6, -1)


class TestQuantize:
    def test_exact_value(self):
        assert quantize(0.75, Q64).raw == 12

    def test_saturates_high(self):
        f = quantize(1000.0, Q64)
        assert f.raw == 511
        assert f.value == 31.9375

    def test_ties_away_from_zero(self):
        assert quantize(-0.03125, Q64).raw == -1
        assert quantize(0.03125, Q64).raw == 1

    def test_error_bound_in_range(self):
        rng = np.random.default_rng(1)
        x = rng.uniform(-31.9, 31.9, size=1000)
        err = np.abs(quantize_raw(x, Q64) * Q64.step - x)
        assert err.max() <= Q64.step / 2 + 1e-12

    def test_nearest_not_truncated(self):
        # 3.97 * 16 = 63.52 rounds up to 64, not down to 63
        assert quantize_raw(3.97, Q64) == 64
        assert quantize_raw(3.96, Q64) == 63


class TestSaturatingOps:
    def test_rails(self):
        top = Fixed(511, Q64)
        assert (top + top).raw == 511
        bottom = Fixed(-512, Q64)
        assert (bottom + bottom).raw == -512

    def test_identity(self):
        x = Fixed(37, Q64)
        assert (x + Fixed(0, Q64)).raw == 37

    def test_format_mismatch(self):
        with pytest.raises(ValueError):
            Fixed(1, Q64) + Fixed(1, QFormat(5, 4))

    @given(st.integers(-512, 511), st.integers(-512, 511))
    def test_matches_wide_integer_clamp(self, a, b):
        assert int(sat_add_raw(a, b, Q64)) == max(-512, min(511, a + b))
        assert int(sat_sub_raw(a, b, Q64)) == max(-512, min(511, a - b))

    @given(st.integers(-512, 511), st.integers(-512, 511))
    def test_commutative(self, a, b):
        assert int(sat_add_raw(a, b, Q64)) == int(sat_add_raw(b, a, Q64))

    def test_negation_roundtrip_except_minimum(self):
        for raw in range(-511, 512):
            assert (-(-Fixed(raw, Q64))).raw == raw
        assert (-Fixed(-512, Q64)).raw == 511  # asymmetric rail saturates


class TestScale3q4:
    def test_exact(self):
        assert int(scale_3q4_raw(16, Q64)) == 12

    def test_truncates_toward_zero(self):
        assert int(scale_3q4_raw(1, Q64)) == 0
        assert int(scale_3q4_raw(-1, Q64)) == 0
        assert int(scale_3q4_raw(2, Q64)) == 1
        assert int(scale_3q4_raw(-2, Q64)) == -1

    @given(st.integers(-512, 511))
    def test_matches_definition(self, raw):
        t = raw * 3
        expected = max(-512, min(511, t // 4 if t >= 0 else -((-t) // 4)))
        assert int(scale_3q4_raw(raw, Q64)) == expected
        assert Fixed(raw, Q64).scale_3q4().raw == expected
