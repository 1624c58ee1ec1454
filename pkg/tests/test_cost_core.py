import math

import pytest
from hypothesis import given, strategies as st

from aa_resources.cost_core import (TCount, ZERO, ceil_int, clog2, flog2, mcx_t_cost, qrom_erase_cost,
                                    rotation_t_cost)


def brute_erase(x):
    return min(2 ** k + math.ceil(x / 2 ** k) for k in range(0, 64))


class TestRotationCost:
    @pytest.mark.parametrize("eps,expected", [(1.0, 10), (0.5, 14), (1e-3, 50)])
    def test_examples(self, eps, expected):
        assert rotation_t_cost(eps) == expected

    @pytest.mark.parametrize("eps", [0.0, -1e-3, 1.5])
    def test_rejects_out_of_range(self, eps):
        with pytest.raises(ValueError):
            rotation_t_cost(eps)

    @given(st.floats(min_value=1e-300, max_value=0.5))
    def test_halving_adds_four(self, eps):
        assert rotation_t_cost(eps / 2) - rotation_t_cost(eps) in (3, 4, 5)

    @given(st.integers(min_value=1, max_value=900))
    def test_halving_adds_exactly_four_on_powers_of_two(self, k):
        eps = 2.0 ** -k
        assert rotation_t_cost(eps / 2) - rotation_t_cost(eps) == 4

    @given(st.floats(min_value=1e-300, max_value=1.0), st.floats(min_value=1e-300, max_value=1.0))
    def test_monotone(self, a, b):
        lo, hi = min(a, b), max(a, b)
        assert rotation_t_cost(hi) <= rotation_t_cost(lo)


class TestMcx:
    @pytest.mark.parametrize("k,expected", [(1, 24), (4, 96), (8, 192)])
    def test_examples(self, k, expected):
        assert mcx_t_cost(k) == expected

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            mcx_t_cost(0)


class TestQromErase:
    @pytest.mark.parametrize("x,expected", [(1, 2), (100, 21), (610, 52)])
    def test_examples(self, x, expected):
        assert qrom_erase_cost(x) == expected

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            qrom_erase_cost(0)

    @given(st.integers(min_value=1, max_value=10 ** 6))
    def test_matches_unbounded_scan_and_bound(self, x):
        v = qrom_erase_cost(x)
        assert v == brute_erase(x)
        assert v <= x + 1


class TestTCount:
    def test_breakdown_must_sum(self):
        with pytest.raises(ValueError):
            TCount(10, {"a": 3, "b": 4})

    def test_rejects_negative_and_float(self):
        with pytest.raises(ValueError):
            TCount(-1)
        with pytest.raises(TypeError):
            TCount(1.5)

    def test_huge_values_exact(self):
        big = TCount.labeled("walk", 10 ** 22 + 7)
        total = big * (2 ** 40) + TCount.labeled("walk", 1)
        assert total.total == (10 ** 22 + 7) * 2 ** 40 + 1
        assert total.breakdown == {"walk": total.total}

    def test_unlabeled_goes_under_unlabeled(self):
        t = TCount.labeled("a", 3) + TCount(4)
        assert t.total == 7 and t.breakdown == {"a": 3, "unlabeled": 4}

    def test_zero_is_identity(self):
        t = TCount.from_parts({"a": 1, "b": 2})
        assert t + ZERO == t

    parts = st.dictionaries(st.sampled_from("abcd"), st.integers(min_value=0, max_value=10 ** 25), max_size=4)

    @given(parts, parts, parts)
    def test_associative_commutative(self, a, b, c):
        x, y, z = TCount.from_parts(a), TCount.from_parts(b), TCount.from_parts(c)
        assert ((x + y) + z).total == (x + (y + z)).total
        assert (x + y).total == (y + x).total
        assert ((x + y) + z).breakdown == (x + (y + z)).breakdown
        assert (x + y).breakdown == (y + x).breakdown

    @given(parts, st.integers(min_value=0, max_value=10 ** 6))
    def test_sums_to_total(self, a, k):
        t = TCount.from_parts(a) * k
        if t.breakdown:
            assert sum(t.breakdown.values()) == t.total


def test_log_helpers():
    assert [clog2(n) for n in (1, 2, 3, 4, 5, 64, 65)] == [0, 1, 2, 2, 3, 6, 7]
    assert clog2(4.0) == 2 and clog2(4.5) == 3
    assert [flog2(n) for n in (1, 2, 3, 610)] == [0, 1, 1, 9]
    assert ceil_int(3.0000000000001) == 3 and ceil_int(3.01) == 4
