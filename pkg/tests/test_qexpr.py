import pytest
from hypothesis import given, strategies as st

from qcongruences.builders import ThetaAtom, eta_series
from qcongruences.qexpr import (BinOp, Eta, Mono, Num, Poch, Pow, QExprSyntaxError, Theta, canonical,
                                eval_qexpr, parse_qexpr, to_text)
from qcongruences.series import Ring, NonUnitError, shift

leaves = st.one_of(
    st.integers(0, 50).map(Num),
    st.integers(0, 20).map(Mono),
    st.integers(1, 24).map(Eta),
    st.integers(1, 6).map(lambda k: Theta(ThetaAtom.phi(k))),
    st.integers(1, 6).map(lambda k: Theta(ThetaAtom.psi(k))),
    st.tuples(st.sampled_from([1, -1]), st.integers(0, 5), st.sampled_from([1, -1]), st.integers(1, 5))
      .map(lambda t: Theta(ThetaAtom.general(*t))),
    st.tuples(st.sampled_from([1, -1]), st.integers(1, 9), st.integers(1, 9)).map(lambda t: Poch(*t)),
)

trees = st.recursive(
    leaves,
    lambda sub: st.one_of(
        st.tuples(st.sampled_from("+-*/"), sub, sub).map(lambda t: BinOp(*t)),
        st.tuples(sub, st.integers(-3, 6)).map(lambda t: Pow(*t)),
    ),
    max_leaves=12,
)


@given(trees)
def test_print_parse_round_trip(e):
    text = to_text(e)
    assert parse_qexpr(text) == e
    assert canonical(text) == text


def test_parse_examples():
    assert parse_qexpr("l1*l8") == BinOp("*", Eta(1), Eta(8))
    assert parse_qexpr("f(-q^1,-q^5)") == Theta(ThetaAtom.general(-1, 1, -1, 5))
    assert parse_qexpr("psi(q^6)") == Theta(ThetaAtom.psi(6))
    assert parse_qexpr(" l4 ^ 5 / ( l1^2 * l2 ) ") == parse_qexpr("l4^5/(l1^2*l2)")


@pytest.mark.parametrize("text, pos", [("l1^(2", 3), ("l0", 0), ("foo(q^1)", 0), ("l1*", 3), ("l1)", 2),
                                       ("phi(q^0)", 0)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(QExprSyntaxError) as err:
        parse_qexpr(text)
    assert err.value.position == pos


def test_eval_examples():
    assert eval_qexpr("l4^5/(l1^2*l2*l8^2)", 3).tolist() == [1, 2, 6, 12]
    two_psi = eval_qexpr("2*psi(q^1)", 12, Ring.mod(2))
    assert two_psi.nonzero_terms() == [(0, 2), (1, 2), (3, 2), (6, 2), (10, 2)]
    assert eval_qexpr("q^1*l2", 10) == shift(eta_series(2, 10), 1)


def test_eval_rejects_non_unit_denominator():
    with pytest.raises(NonUnitError):
        eval_qexpr("l1/(2*l2)", 5)
    with pytest.raises(NonUnitError):
        eval_qexpr("l1/q^1", 5)


def test_modular_eval_is_reduction_of_exact():
    text = "l2*l8^2/(l1^2*l4)+3*q^2*phi(q^3)-poch(-q^1,q^2)"
    exact = eval_qexpr(text, 100)
    for bits in (1, 2, 3, 4):
        assert eval_qexpr(text, 100, Ring.mod(bits)).tolist() == [c % (1 << bits) for c in exact.tolist()]
