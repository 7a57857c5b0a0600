import pytest

from qcongruences.dissections import (g3_solutions, g3_uniqueness_scan, l1_residue_claim, l1_witness,
                                      pm_index, psi_residue_claim, residue_avoidance_scan,
                                      verify_2_3_dissections, verify_binomial_congruences,
                                      verify_l1_dissection, verify_psi_dissection)
from qcongruences.series import Ring


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_psi_dissection(p):
    assert verify_psi_dissection(p, 300).passed
    assert verify_psi_dissection(p, 200, use_jtp=True).passed


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_l1_dissection(p):
    assert verify_l1_dissection(p, 300).passed


def test_dissection_in_residue_ring():
    assert verify_l1_dissection(7, 300, Ring.mod(2)).passed


def test_bad_primes_are_rejected():
    with pytest.raises(ValueError):
        verify_psi_dissection(2)
    with pytest.raises(ValueError):
        verify_l1_dissection(3)
    with pytest.raises(ValueError):
        verify_psi_dissection(9)


def test_pm_index_branches():
    assert pm_index(5) == -1
    assert pm_index(7) == 1
    assert pm_index(11) == -2
    assert pm_index(13) == 2


def test_residue_claims():
    ok, info = psi_residue_claim(5)
    assert ok and info == {"tail_residue": 3, "head_residues": [0, 1]}
    ok, _ = l1_residue_claim(7)
    assert ok
    assert residue_avoidance_scan(97).passed


def test_tail_sign_and_prefix():
    w = l1_witness(5)
    assert w.tail.prefix == 1 and w.tail.sign == -1
    assert all(t.t != pm_index(5) for t in w.head)


def test_tampered_witness_is_caught():
    from qcongruences.dissections import DissectionTerm, _check_dissection
    from qcongruences.builders import eta_series
    from qcongruences.report import VerificationReport

    w = l1_witness(7)
    w.tail = DissectionTerm(-w.tail.sign, w.tail.prefix, None)
    rep = _check_dissection(VerificationReport("x"), eta_series(1, 120), w, eta_series(49, 120), False)
    assert rep.status == "fail" and rep.first_failure["index"] == 2


def test_two_three_dissections():
    assert all(r.passed for r in verify_2_3_dissections(300))


@pytest.mark.parametrize("k", range(1, 7))
def test_binomial_congruences(k):
    for m in range(1, 5):
        assert verify_binomial_congruences(k, m, 200).passed
    assert verify_binomial_congruences(k, 1, 0).passed


def test_g3_scan():
    rep = g3_uniqueness_scan(97)
    assert rep.passed
    assert rep.params["primes"][:4] == [5, 7, 13, 23]
    assert g3_solutions(7) == [(1, 1)]
