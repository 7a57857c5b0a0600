import pytest
from hypothesis import given, strategies as st

from qcongruences.builders import (PochhammerFactor, ThetaAtom, eta_series, jacobi_product_series,
                                   pochhammer_series, qpoch, theta_series)
from qcongruences.series import EXACT, Ring, TruncatedSeries, first_mismatch


def naive_product(exponents, order, signs=None):
    """prod (1 - sign*q^e) by repeated multiplication of plain lists."""
    out = [1] + [0] * order
    for i, e in enumerate(exponents):
        s = 1 if signs is None else signs[i]
        if e > order:
            continue
        new = out[:]
        for k in range(e, order + 1):
            new[k] -= s * out[k - e]
        out = new
    return out


def test_pochhammer_examples():
    assert qpoch(1, 1, 1, 1, 4, length=2).tolist() == [1, -1, -1, 1, 0]
    assert qpoch(1, 1, 1, 1, 7).tolist() == [1, -1, -1, 0, 0, 1, 0, 1]
    assert qpoch(-1, 0, 1, 2, 0, length=1).tolist() == [2]


def test_pochhammer_factor_validation():
    with pytest.raises(ValueError):
        PochhammerFactor(1, 0, 1)
    assert pochhammer_series(PochhammerFactor(-1, 0, 2, 1), 3).tolist() == [2, 0, 0, 0]


@given(st.integers(1, 9), st.integers(0, 60))
def test_eta_matches_naive_product(n, order):
    want = naive_product([n * k for k in range(1, order // n + 2)], order)
    assert eta_series(n, order).tolist() == want


def test_eta_examples():
    assert eta_series(1, 7).tolist() == [1, -1, -1, 0, 0, 1, 0, 1]
    assert eta_series(2, 3).tolist() == [1, 0, -1, 0]


def test_eta_residue_ring_is_reduction():
    for bits in (1, 2, 3, 4):
        r = Ring.mod(bits)
        exact = eta_series(3, 200)
        assert eta_series(3, 200, r).tolist() == [c % (1 << bits) for c in exact.tolist()]


def test_theta_examples():
    assert theta_series(ThetaAtom.phi(1), 9).tolist() == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
    assert theta_series(ThetaAtom.psi(1), 10).nonzero_terms() == [(0, 1), (1, 1), (3, 1), (6, 1), (10, 1)]


@given(st.sampled_from([1, -1]), st.integers(0, 6), st.sampled_from([1, -1]), st.integers(0, 6))
def test_theta_sum_equals_triple_product(cs, ce, ds, de):
    if ce + de < 1:
        return
    t = ThetaAtom.general(cs, ce, ds, de)
    assert first_mismatch(theta_series(t, 150), jacobi_product_series(t, 150)) is None


def test_theta_atom_validation():
    with pytest.raises(ValueError):
        ThetaAtom.general(1, 0, 1, 0)
    with pytest.raises(ValueError):
        ThetaAtom.general(2, 1, 1, 1)


def test_pochhammer_with_signed_base():
    # (-q; -q^2)_inf against a literal product
    order = 40
    exps = [1 + 2 * k for k in range(order)]
    signs = [-((-1) ** k) for k in range(order)]
    assert qpoch(-1, 1, -1, 2, order).tolist() == naive_product(exps, order, signs)
