from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from synchro import cerny
from synchro.errors import BudgetExceeded, InvalidParameter
from synchro.packing import (
    PackingDesign,
    PackingInstance,
    exact_packing,
    greedy_packing,
    monotonicity_check,
    observed_packing_family,
    packing_number,
    upper_bounds,
)


def test_instance_validation():
    with pytest.raises(InvalidParameter):
        PackingInstance(3, 2, 5)
    with pytest.raises(InvalidParameter):
        PackingInstance(0, 1, 5)


def test_upper_bounds_examples():
    assert dict(upper_bounds(PackingInstance(2, 2, 6)))["binomial"] == 15
    assert dict(upper_bounds(PackingInstance(2, 3, 7)))["binomial"] == 7
    ub = dict(upper_bounds(PackingInstance(2, 4, 8)))
    assert ub["ratio_small_n"] == 3
    # denominator not positive: bound omitted
    assert "ratio_small_n" not in dict(upper_bounds(PackingInstance(2, 3, 9)))


@pytest.mark.parametrize("n", range(2, 9))
def test_pair_packing_formula(n):
    value, design = exact_packing(PackingInstance(2, 2, n))
    assert value == n * (n - 1) // 2
    assert design.is_valid() and len(design) == value


def test_fano_and_steiner_triple_equalities():
    assert packing_number(2, 3, 7) == 7 == comb(7, 2) // comb(3, 2)
    assert packing_number(2, 3, 9) == 12 == comb(9, 2) // comb(3, 2)


def test_full_block_instance():
    value, design = exact_packing(PackingInstance(2, 5, 5))
    assert value == 1 and len(design) == 1


def test_t_equals_r_edge():
    for n in (3, 5, 7):
        for t in (1, 2, 3):
            assert packing_number(t, t, n) == comb(n, t)


def test_disjoint_blocks_when_t_is_one():
    assert packing_number(1, 2, 7) == 3
    assert packing_number(1, 3, 9) == 3


@pytest.mark.parametrize("n", [4, 5, 6])
def test_monotonicity(n):
    assert monotonicity_check(2, n)
    values = [packing_number(2, r, n) for r in range(2, n + 1)]
    assert values[0] == n * (n - 1) // 2 and values[-1] == 1


def test_greedy_below_exact_and_deterministic():
    for t, r, n in [(2, 3, 7), (2, 3, 6), (2, 4, 8), (3, 4, 6)]:
        p = PackingInstance(t, r, n)
        g = greedy_packing(p, seed=5)
        assert g.is_valid()
        assert len(g) <= packing_number(t, r, n)
        assert greedy_packing(p, seed=5).blocks == g.blocks


def test_greedy_pairs_is_complete():
    p = PackingInstance(2, 2, 7)
    assert len(greedy_packing(p, seed=1)) == 21


def test_design_validator_rejects_double_cover():
    bad = PackingDesign(6, 3, 2, ((0, 1, 2), (0, 1, 3)))
    assert not bad.is_valid()
    good = PackingDesign(6, 3, 2, ((0, 1, 2), (0, 3, 4)))
    assert good.is_valid()


def test_budget_exhaustion_reports_interval():
    with pytest.raises(BudgetExceeded) as e:
        exact_packing(PackingInstance(2, 3, 9), budget=3)
    assert e.value.lower is not None and e.value.upper == 12


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_observed_family_cerny_pairs(n):
    fam = observed_packing_family(cerny(n), 2)
    assert len(fam) == n * (n - 1) // 2
    assert fam.is_valid()


def test_observed_family_degenerate_r():
    assert len(observed_packing_family(cerny(4), 9)) == 0


def test_observed_family_bounded_by_packing_number():
    for n in (3, 4, 5):
        for r in (2, 3):
            fam = observed_packing_family(cerny(n), r)
            if r <= n:
                assert len(fam) <= packing_number(2, r, n)


@given(st.integers(2, 7), st.integers(0, 10_000))
@settings(max_examples=40)
def test_greedy_valid_for_random_seeds(n, seed):
    p = PackingInstance(2, 3, max(n, 3))
    assert greedy_packing(p, seed=seed).is_valid()
