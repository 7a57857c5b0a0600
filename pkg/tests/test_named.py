import pytest

from qcongruences.named import REGISTRY, get_named, named_series, sum_side_series
from qcongruences.partitions import count_dp, overpartition_constraint
from qcongruences.series import first_mismatch


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_three_descriptions_agree(name):
    ns = REGISTRY[name]
    total = ns.sum_series(120)
    assert first_mismatch(total, ns.product_series(120)) is None
    assert first_mismatch(total, ns.eta_series(120)) is None


def test_sum_side_examples():
    assert sum_side_series("h", 2).tolist() == [1, 2, 4]
    assert sum_side_series("s", 0).tolist() == [1]
    # the n = 0 summand 1/(1-q) alone reaches q^1
    assert sum_side_series("r", 1).tolist() == [1, 1]


def test_leading_coefficients():
    assert named_series("g2", 4).tolist() == [1, 2, 6, 12, 22]
    assert named_series("h", 4).tolist() == [1, 2, 4, 8, 15]


def test_general_g_series():
    g5 = get_named("g5")
    assert first_mismatch(g5.sum_series(80), g5.eta_series(80)) is None
    assert g5.eta_series(80).tolist() == count_dp(overpartition_constraint(5), 80)
    with pytest.raises(KeyError):
        get_named("zz")
