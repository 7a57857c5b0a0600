import random

import pytest
from hypothesis import given, strategies as st

from qcongruences.builders import eta_series
from qcongruences.named import REGISTRY
from qcongruences.partitions import (EXHAUSTIVE_LIMIT, H_CONSTRAINT, PartitionConstraint, count_dp,
                                     count_exhaustive, general_pt, iter_multisets, overpartition_constraint)
from qcongruences.qexpr import eval_qexpr


def test_h_constraint_examples():
    assert count_dp(H_CONSTRAINT, 2) == [1, 2, 4]
    assert count_exhaustive(H_CONSTRAINT, 2) == 4


def test_general_pt():
    assert general_pt(1, 4) == [1, 1, 2, 3, 5]
    assert general_pt(2, 2)[2] == 5
    assert general_pt(7, 0) == [1]


def test_overpartitions():
    plain = PartitionConstraint(1, (1,), True)
    assert count_dp(plain, 4) == [1, 2, 4, 8, 14]
    assert count_dp(plain, 60) == eval_qexpr("l2/l1^2", 60).tolist()


@pytest.mark.parametrize("k", [2, 3, 4])
def test_overpartition_constraint_matches_series(k):
    assert count_dp(overpartition_constraint(k), 200) == REGISTRY[f"g{k}"].eta_series(200).tolist()


def test_h_matches_series():
    assert count_dp(H_CONSTRAINT, 200) == REGISTRY["h"].eta_series(200).tolist()


def test_multisets_are_partitions():
    c = PartitionConstraint.from_map(3, {1: 2, 2: 1})
    seen = set()
    for parts in iter_multisets(c, 9):
        assert sum(v * m for v, _, m in parts) == 9
        assert all(c.colours_of(v) > col >= 0 for v, col, _ in parts)
        seen.add(parts)
    assert len(seen) == count_dp(c, 9)[9]


def test_exhaustive_is_bounded():
    with pytest.raises(ValueError):
        count_exhaustive(H_CONSTRAINT, EXHAUSTIVE_LIMIT + 1)


def test_constraint_validation():
    with pytest.raises(ValueError):
        PartitionConstraint(2, (1,))
    with pytest.raises(ValueError):
        PartitionConstraint(2, (0, 0))


constraints = st.integers(1, 10).flatmap(lambda m: st.builds(
    PartitionConstraint, st.just(m),
    st.lists(st.integers(0, 3), min_size=m, max_size=m).filter(any).map(tuple), st.booleans()))


@given(constraints)
def test_dp_equals_eta_quotient(c):
    # prod over residues r of ((-q^r;q^m)/(q^r;q^m))^colours, with r = m for residue 0
    from qcongruences.builders import qpoch
    from qcongruences.series import TruncatedSeries
    n = 40
    s = TruncatedSeries.constant(1, n)
    for r, k in enumerate(c.colours):
        a = r or c.modulus
        for _ in range(k):
            s = s / qpoch(1, a, 1, c.modulus, n)
            if c.overlined:
                s = s * qpoch(-1, a, 1, c.modulus, n)
    assert count_dp(c, n) == s.tolist()


def test_dp_equals_exhaustive_on_random_constraints():
    rng = random.Random(20240611)
    for _ in range(100):
        m = rng.randint(1, 10)
        colours = [rng.randint(0, 3) for _ in range(m)]
        if not any(colours):
            colours[rng.randrange(m)] = 1
        c = PartitionConstraint(m, tuple(colours), rng.random() < 0.5)
        n = rng.randint(0, 12)
        assert count_exhaustive(c, n) == count_dp(c, n)[n], (c, n)


def test_factored_enumeration_matches_full_listing():
    # list every (value, colour) multiset and every overline subset explicitly
    rng = random.Random(5)
    for _ in range(60):
        m = rng.randint(1, 6)
        colours = [rng.randint(0, 3) for _ in range(m)]
        colours[0] = colours[0] or 1
        c = PartitionConstraint(m, tuple(colours), rng.random() < 0.5)
        n = rng.randint(0, 10)
        listed = sum(2 ** len(parts) if c.overlined else 1 for parts in iter_multisets(c, n))
        assert listed == count_exhaustive(c, n)
