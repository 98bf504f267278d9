import math

import numpy as np
import pytest

from starmerge import (
    AllocationMode,
    CARVING_RATE,
    carving_infidelity,
    carving_tradeoff,
    cooperativity_from_physical,
    new_star,
    partition_group_sizes,
)


def test_new_star_redistribution_leaf_count():
    assert new_star(15, AllocationMode.REDISTRIBUTION).leaves_remaining == 14


def test_new_star_partition_groups_even():
    assert new_star(13, AllocationMode.PARTITIONING).group_remaining == [3, 3, 3, 3]


def test_new_star_partition_groups_remainder():
    assert new_star(15, AllocationMode.PARTITIONING).group_remaining == [4, 4, 3, 3]


@pytest.mark.parametrize("n", [0, 1])
def test_new_star_rejects_tiny(n):
    with pytest.raises(ValueError):
        new_star(n, AllocationMode.REDISTRIBUTION)


def test_group_sizes_balanced():
    for n in range(2, 40):
        sizes = partition_group_sizes(n)
        assert sum(sizes) == n - 1
        assert max(sizes) - min(sizes) <= 1
        assert sizes == sorted(sizes, reverse=True)


def test_consume_redistribution_exhaustion():
    ledger = new_star(2, AllocationMode.REDISTRIBUTION)
    assert ledger.consume_leaf(2)
    assert not ledger.consume_leaf(0)
    assert ledger.leaves_remaining == 0


def test_consume_partition_group_isolation():
    ledger = new_star(2, AllocationMode.PARTITIONING)
    assert ledger.group_remaining == [1, 0, 0, 0]
    # leaves in group 0 do not serve direction 1: the defining difference
    assert not ledger.consume_leaf(1)
    assert ledger.leaves_remaining == 1
    assert ledger.consume_leaf(0)
    assert ledger.group_remaining == [0, 0, 0, 0]
    assert ledger.leaves_remaining == 0


def test_consume_invalid_direction():
    with pytest.raises(ValueError):
        new_star(5, AllocationMode.REDISTRIBUTION).consume_leaf(4)


@pytest.mark.parametrize("mode", list(AllocationMode))
def test_lifetime_supply_bounded(mode):
    rng = np.random.default_rng(2024)
    for _ in range(50):
        n = int(rng.integers(2, 25))
        ledger = new_star(n, mode)
        supplied = sum(ledger.consume_leaf(int(d)) for d in rng.integers(0, 4, size=200))
        assert supplied <= n - 1
        if mode is AllocationMode.PARTITIONING:
            assert sum(ledger.group_remaining) == ledger.leaves_remaining
        assert ledger.leaves_remaining >= 0


def test_carving_infidelity_zero_coupling():
    assert carving_infidelity(0.0, 15) == 1.0


def test_carving_infidelity_values():
    # exp(-(8/pi^2) C/N) evaluated with 30-digit arithmetic
    assert carving_infidelity(160, 15) == pytest.approx(1.75815688254047903e-4, rel=1e-12)
    assert carving_infidelity(120, 12) == pytest.approx(3.01815488846931765e-4, rel=1e-12)


def test_carving_tradeoff_certain_success():
    assert carving_tradeoff(1.0, 123.0, 7) == 1.0


def test_carving_tradeoff_values():
    assert carving_tradeoff(0.5, 160, 15) == pytest.approx(6.15195825143981037e-4, rel=1e-12)
    # at P_s = exp(-8/pi^2) the two closed forms coincide
    ps = math.exp(-CARVING_RATE)
    assert carving_tradeoff(ps, 120, 12) == pytest.approx(3.01815488846931765e-4, rel=1e-12)


def test_closed_forms_agree_at_calibration_point():
    ps = math.exp(-CARVING_RATE)
    rng = np.random.default_rng(7)
    for _ in range(200):
        c = float(rng.uniform(0, 400))
        n = int(rng.integers(1, 40))
        assert carving_tradeoff(ps, c, n) == pytest.approx(carving_infidelity(c, n), rel=1e-12)


def test_carving_infidelity_monotonicity():
    rng = np.random.default_rng(11)
    for _ in range(100):
        c = float(rng.uniform(1, 300))
        n = int(rng.integers(2, 30))
        assert carving_infidelity(c + 1.0, n) < carving_infidelity(c, n)
        assert carving_infidelity(c, n + 1) > carving_infidelity(c, n)


def test_carving_domain_errors():
    with pytest.raises(ValueError):
        carving_infidelity(-1.0, 5)
    with pytest.raises(ValueError):
        carving_infidelity(10.0, 0)
    with pytest.raises(ValueError):
        carving_tradeoff(0.0, 10.0, 5)
    with pytest.raises(ValueError):
        carving_tradeoff(1.5, 10.0, 5)


@pytest.mark.parametrize(
    "g,kappa,gamma,expected",
    [(1, 1, 1, 1.0), (2, 1, 1, 4.0), (10, 2, 5, 10.0)],
)
def test_cooperativity_from_physical(g, kappa, gamma, expected):
    assert cooperativity_from_physical(g, kappa, gamma) == pytest.approx(expected, rel=1e-15)


def test_cooperativity_rejects_nonpositive_rates():
    with pytest.raises(ValueError):
        cooperativity_from_physical(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        cooperativity_from_physical(1.0, -2.0, 1.0)
