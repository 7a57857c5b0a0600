"""The six generating functions G_k, H, T, M, R, S in sum, product and eta form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .builders import ThetaAtom, qpoch, theta_series
from .qexpr import QExpr, eval_qexpr, parse_qexpr
from .series import EXACT, Ring, TruncatedSeries, div_unit, shift


def _poch(sign, a, b, order, ring, length=None):
    return qpoch(sign, a, 1, b, order, ring, length)


def _sum_terms(order: int, ring: Ring, min_exp: Callable[[int], int],
               summand: Callable[[int, int], TruncatedSeries]) -> TruncatedSeries:
    """sum_n q^min_exp(n) * summand(n, order - min_exp(n)), stopping once min_exp(n) > order."""
    total = TruncatedSeries.zero(order, ring)
    n = 0
    while min_exp(n) <= order:
        e = min_exp(n)
        part = summand(n, order - e)
        padded = TruncatedSeries.zero(order, ring).coeffs.copy()
        padded[e:] = part.coeffs
        total = total + TruncatedSeries._wrap(padded, ring)
        n += 1
    return total


def _overpartition_sum(order: int, ring: Ring) -> TruncatedSeries:
    # q-binomial theorem: sum_n (-1;q)_n q^n / (q;q)_n = (-q;q)_inf / (q;q)_inf
    def summand(n, rest):
        num = _poch(-1, 0, 1, rest, ring, n)
        return div_unit(num, _poch(1, 1, 1, rest, ring, n))

    return _sum_terms(order, ring, lambda n: n, summand)


def _g_sum(k: int):
    def build(order: int, ring: Ring) -> TruncatedSeries:
        return _overpartition_sum(order, ring) * theta_series(ThetaAtom.phi(k), order, ring)

    return build


def _h_sum(order, ring):
    def summand(n, rest):
        return div_unit(_poch(-1, 1, 1, rest, ring, 2 * n), _poch(1, 1, 1, rest, ring, 2 * n + 1))

    return _sum_terms(order, ring, lambda n: n, summand)


def _t_sum(order, ring):
    def summand(n, rest):
        return div_unit(_poch(-1, 1, 2, rest, ring, n), _poch(1, 1, 1, rest, ring, 2 * n + 1))

    return _sum_terms(order, ring, lambda n: n, summand)


def _m_sum(order, ring):
    def summand(n, rest):
        return div_unit(_poch(-1, 1, 1, rest, ring, 2 * n), _poch(1, 2, 2, rest, ring, n))

    return _sum_terms(order, ring, lambda n: n, summand)


def _r_sum(order, ring):
    def summand(n, rest):
        return div_unit(_poch(-1, 2, 2, rest, ring, n), _poch(1, 1, 1, rest, ring, 2 * n + 1))

    return _sum_terms(order, ring, lambda n: n * (n + 1), summand)


def _s_sum(order, ring):
    def summand(n, rest):
        # (-1;q^2)_n = 2 (-q^2;q^2)_{n-1} for n >= 1
        num = TruncatedSeries.constant(1, rest, ring) if n == 0 else 2 * _poch(-1, 2, 2, rest, ring, n - 1)
        return div_unit(num, _poch(1, 1, 1, rest, ring, 2 * n))

    return _sum_terms(order, ring, lambda n: n * (n + 1), summand)


@dataclass(frozen=True)
class NamedSeries:
    """One generating function with its three equivalent descriptions."""

    name: str
    sum_side: Callable[[int, Ring], TruncatedSeries]
    product_text: str
    eta_text: str
    label: str = ""

    @property
    def product_expr(self) -> QExpr:
        return parse_qexpr(self.product_text)

    @property
    def eta_expr(self) -> QExpr:
        return parse_qexpr(self.eta_text)

    def sum_series(self, order: int, ring: Ring = EXACT) -> TruncatedSeries:
        return self.sum_side(order, ring)

    def product_series(self, order: int, ring: Ring = EXACT) -> TruncatedSeries:
        return eval_qexpr(self.product_expr, order, ring)

    def eta_series(self, order: int, ring: Ring = EXACT) -> TruncatedSeries:
        return eval_qexpr(self.eta_expr, order, ring)


def g_series(k: int) -> NamedSeries:
    k2, k4 = 2 * k, 4 * k
    product = (
        f"poch(-q^1,q^1)*poch(-q^{k},q^{k2})*poch(q^{k2},q^{k2})"
        f"/(poch(q^1,q^1)*poch(q^{k},q^{k2})*poch(-q^{k2},q^{k2}))"
    )
    if k == 2:
        eta = "l4^5/(l1^2*l2*l8^2)"
    else:
        eta = f"l2*l{k2}^5/(l1^2*l{k}^2*l{k4}^2)"
    return NamedSeries(f"g{k}", _g_sum(k), product, eta, f"(gk), k={k}")


REGISTRY: dict[str, NamedSeries] = {
    "g2": g_series(2),
    "g3": g_series(3),
    "g4": g_series(4),
    "h": NamedSeries(
        "h", _h_sum,
        "poch(-q^1,q^1)*poch(q^4,q^4)*poch(-q^4,q^4)^2/poch(q^1,q^1)",
        "l2*l8^2/(l1^2*l4)", "(c1)",
    ),
    "t": NamedSeries(
        "t", _t_sum,
        "poch(-q^1,q^1)*poch(q^12,q^12)*poch(q^3,q^12)*poch(q^9,q^12)/poch(q^1,q^1)",
        "l2*l3*l12/(l1^2*l6)", "(c7)",
    ),
    "m": NamedSeries(
        "m", _m_sum,
        "poch(-q^1,q^1)*poch(q^6,q^6)*poch(q^1,q^6)*poch(q^5,q^6)/poch(q^1,q^1)",
        "l6^2/(l1*l3)", "(c10)",
    ),
    "r": NamedSeries(
        "r", _r_sum,
        "poch(-q^2,q^2)*poch(q^6,q^6)*poch(-q^1,q^6)*poch(-q^5,q^6)/poch(q^2,q^2)",
        "l3*l12/(l1*l6)", "(c12)",
    ),
    "s": NamedSeries(
        "s", _s_sum,
        "poch(-q^2,q^2)*poch(q^6,q^6)*poch(-q^3,q^6)^2/poch(q^2,q^2)",
        "l4*l6^5/(l2^2*l3^2*l12^2)", "(c14)",
    ),
}


def get_named(name: str) -> NamedSeries:
    if name in REGISTRY:
        return REGISTRY[name]
    if name.startswith("g") and name[1:].isdigit() and int(name[1:]) >= 1:
        return g_series(int(name[1:]))
    raise KeyError(f"unknown series {name!r}; known: {', '.join(REGISTRY)}")


def sum_side_series(name: str, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    return get_named(name).sum_series(order, ring)


def named_series(name: str, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    """Coefficient series of a named function (computed from its eta form)."""
    return get_named(name).eta_series(order, ring)
