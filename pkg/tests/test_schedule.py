from fractions import Fraction

import numpy as np
import pytest

from qcldpc.code_model import BaseMatrix, wifi_base_matrix
from qcldpc.compact import build_compact
from qcldpc.schedule import (
    PIPELINED_2X,
    SERIAL_1X,
    ScheduleError,
    ThroughputModel,
    pipelining_efficiency,
    rearrange,
    select_superlayer_size,
    slot_count,
    superlayer_candidates,
    throughput,
)


def stagger_violations(plan, code):
    """Independent re-derivation of the hazard set from the rearranged matrix."""
    found = set()
    for u in range(code.I - 1):
        if (u + 1) % plan.superlayer_size == 0:
            continue
        prev = {int(b): w for w, b in enumerate(plan.beta_I_prime[u]) if b >= 0}
        for w2, b in enumerate(plan.beta_I_prime[u + 1]):
            b = int(b)
            if b >= 0 and b in prev and prev[b] >= w2:
                found.add((u, prev[b], u + 1, w2, b))
    return found


@pytest.fixture(scope="module")
def wifi81():
    return build_compact(wifi_base_matrix(81))


class TestEfficiency:
    def test_values(self):
        assert pipelining_efficiency(6) == Fraction(6, 7)
        assert pipelining_efficiency(2) == Fraction(2, 3)
        assert pipelining_efficiency(1) == Fraction(1, 2)
        assert abs(float(pipelining_efficiency(6)) - 0.857) < 1e-3

    def test_strictly_increasing_below_one(self):
        values = [pipelining_efficiency(L) for L in range(1, 30)]
        assert all(v < 1 for v in values)
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            pipelining_efficiency(0)


class TestSelectSuperlayerSize:
    def test_wifi(self, wifi81):
        assert superlayer_candidates(12) == [2, 4, 6]
        l_star, plan = select_superlayer_size(wifi81)
        assert l_star == 6
        assert plan.superlayer_size == 6

    def test_two_layers_has_no_candidate(self):
        code = build_compact(BaseMatrix(entries=np.array([[0, -1], [-1, 0]]), z=2))
        with pytest.raises(ScheduleError, match="serial_1x"):
            select_superlayer_size(code)

    def test_odd_layer_count_rejected(self):
        code = build_compact(BaseMatrix(entries=np.ones((3, 3), dtype=int) * 0, z=2))
        with pytest.raises(ScheduleError, match="odd"):
            select_superlayer_size(code)

    def test_eight_independent_layers(self):
        # block-diagonal base: layers pairwise independent, even divisors {2, 4}
        entries = np.full((8, 8), -1, dtype=int)
        np.fill_diagonal(entries, 0)
        code = build_compact(BaseMatrix(entries=entries, z=3))
        l_star, plan = select_superlayer_size(code)
        assert l_star == 4
        assert len(plan.hazards) == 0


class TestRearrange:
    def test_rows_are_permutations(self, wifi81):
        plan = rearrange(wifi81, 6)
        for u in range(wifi81.I):
            orig = sorted(zip(wifi81.beta_I[u], wifi81.beta_S[u]))
            new = sorted(zip(plan.beta_I_prime[u], plan.beta_S_prime[u]))
            assert orig == new

    def test_order_maps_original_to_slot(self, wifi81):
        plan = rearrange(wifi81, 6)
        for u in range(wifi81.I):
            for w_orig in range(wifi81.J):
                slot = plan.order[u, w_orig]
                assert plan.beta_I_prime[u, slot] == wifi81.beta_I[u, w_orig]
                assert plan.beta_S_prime[u, slot] == wifi81.beta_S[u, w_orig]

    def test_superlayer_one_is_identity(self, wifi81):
        plan = rearrange(wifi81, 1)
        assert len(plan.hazards) == 0
        assert np.array_equal(plan.beta_I_prime, wifi81.beta_I)

    def test_disjoint_layers_identity(self):
        code = build_compact(
            BaseMatrix(entries=np.array([[0, 1, -1, -1], [-1, -1, 2, 0]]), z=3)
        )
        plan = rearrange(code, 2)
        assert len(plan.hazards) == 0
        assert np.array_equal(plan.beta_I_prime, code.beta_I)

    def test_serial_mode_keeps_order(self, wifi81):
        plan = rearrange(wifi81, 6, mode=SERIAL_1X)
        assert np.array_equal(plan.beta_I_prime, wifi81.beta_I)
        assert plan.hazards == ()

    def test_hazards_match_independent_checker(self, wifi81):
        plan = rearrange(wifi81, 6)
        assert set(plan.hazards) == stagger_violations(plan, wifi81)

    def test_wifi_hazards_within_hand_schedule_budget(self, wifi81):
        plan = rearrange(wifi81, 6)
        assert len(plan.hazards) <= 26

    def test_non_dividing_size_rejected(self, wifi81):
        with pytest.raises(ScheduleError):
            rearrange(wifi81, 5)

    def test_random_codes_keep_block_multisets(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            m_b = int(rng.integers(2, 7)) * 2
            n_b = int(rng.integers(2, 10))
            entries = np.where(rng.random((m_b, n_b)) < 0.5, rng.integers(0, 4, (m_b, n_b)), -1)
            code = build_compact(BaseMatrix(entries=entries, z=4))
            for L in (1, 2, m_b):
                if m_b % L:
                    continue
                plan = rearrange(code, L)
                for u in range(m_b):
                    assert sorted(plan.beta_I_prime[u]) == sorted(code.beta_I[u])
                assert set(plan.hazards) == stagger_violations(plan, code)


class TestSlotCount:
    def test_wifi_serial(self, wifi81):
        plan = rearrange(wifi81, 6, mode=SERIAL_1X)
        assert slot_count(wifi81, plan) == 192

    def test_wifi_pipelined(self, wifi81):
        plan = rearrange(wifi81, 6)
        assert slot_count(wifi81, plan) == 112

    def test_speedup_ratio(self, wifi81):
        serial = slot_count(wifi81, rearrange(wifi81, 6, mode=SERIAL_1X))
        pipelined = slot_count(wifi81, rearrange(wifi81, 6))
        assert Fraction(serial, pipelined) == Fraction(12, 7)
        assert abs(serial / pipelined - 1.714) < 1e-3

    def test_ratio_formula_any_size(self, wifi81):
        serial = slot_count(wifi81, rearrange(wifi81, 1, mode=SERIAL_1X))
        for L in (1, 2, 3, 4, 6, 12):
            pipelined = slot_count(wifi81, rearrange(wifi81, L))
            assert Fraction(pipelined, serial) == Fraction(L + 1, 2 * L)


class TestThroughput:
    def model(self, **kw):
        defaults = dict(f_clk_hz=200e6, n_bits=1944, iterations=8, slots_per_iteration=112)
        defaults.update(kw)
        return ThroughputModel(**defaults)

    def test_example_value(self):
        t = throughput(self.model())
        assert abs(t - 433.9e6) < 0.1e6

    def test_iterations_proportionality(self):
        assert throughput(self.model(iterations=16)) == throughput(self.model()) / 2

    def test_cycles_proportionality(self):
        assert throughput(self.model(slots_per_iteration=56)) == throughput(self.model()) * 2

    def test_positive_fields_enforced(self):
        with pytest.raises(ValueError):
            self.model(iterations=0)
