"""Series for q-Pochhammer symbols, eta symbols and Ramanujan theta functions."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .series import EXACT, Ring, TruncatedSeries, _zeros, substitute_power


@dataclass(frozen=True)
class PochhammerFactor:
    """(sign*q^a; q^b)_length, i.e. prod_{k < length} (1 - sign*q^(a + k*b)).

    ``length=None`` means the infinite product.
    """

    sign: int
    a: int
    b: int
    length: int | None = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.b < 1:
            raise ValueError("step b must be >= 1")
        if self.a < 0 or (self.a == 0 and self.sign != -1):
            # (1; q)_n vanishes identically; only (-1; q^b)_n is allowed at a = 0
            raise ValueError("offset a must be >= 1 (a = 0 only with sign -1)")
        if self.length is not None and self.length < 0:
            raise ValueError("length must be >= 0")


def _times_binomial(arr: np.ndarray, coeff: int, e: int, ring: Ring) -> None:
    """In place: arr <- arr * (1 + coeff*q^e)."""
    if e == 0:
        arr *= 1 + coeff
    elif e < len(arr):
        arr[e:] = arr[e:] + coeff * arr[:-e]
    if not ring.exact:
        np.remainder(arr, ring.modulus, out=arr)


def qpoch(a_sign: int, a_exp: int, b_sign: int, b_exp: int, order: int,
          ring: Ring = EXACT, length: int | None = None) -> TruncatedSeries:
    """(A; B)_length for monomials A = a_sign*q^a_exp and B = b_sign*q^b_exp.

    Factors whose exponent exceeds ``order`` are 1 to this order and are omitted.
    """
    if b_exp < 1:
        raise ValueError("base exponent must be >= 1")
    arr = _zeros(order + 1, ring)
    arr[0] = 1
    k = 0
    while length is None or k < length:
        e = a_exp + k * b_exp
        if e > order:
            break
        sign = a_sign * (b_sign if k % 2 else 1)
        _times_binomial(arr, -sign, e, ring)
        k += 1
    return TruncatedSeries._wrap(arr, ring)


def pochhammer_series(f: PochhammerFactor, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    return qpoch(f.sign, f.a, 1, f.b, order, ring, f.length)


_lock = threading.Lock()


@lru_cache(maxsize=None)
def _euler_product(order: int, ring: Ring) -> TruncatedSeries:
    # pentagonal number theorem: (q;q)_inf = sum_k (-1)^k q^(k(3k-1)/2)
    terms: dict[int, int] = {0: 1}
    k = 1
    while k * (3 * k - 1) // 2 <= order:
        sign = -1 if k % 2 else 1
        terms[k * (3 * k - 1) // 2] = sign
        terms[k * (3 * k + 1) // 2] = sign
        k += 1
    return TruncatedSeries.from_sparse(terms, order, ring)


def eta_series(n: int, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    """The eta symbol l_n = (q^n; q^n)_inf truncated at q^order."""
    if n < 1:
        raise ValueError("eta index must be >= 1")
    with _lock:
        base = _euler_product(order // n, ring)
    return substitute_power(base, n, order) if n > 1 else base


@dataclass(frozen=True)
class ThetaAtom:
    """Ramanujan's f(c, d) with c = c_sign*q^c_exp and d = d_sign*q^d_exp.

    ``kind`` records how the atom was written ("f", "phi" or "psi"); ``scale``
    is k in phi(q^k) or psi(q^k).  phi(q^k) = f(q^k, q^k), psi(q^k) = f(q^k, q^3k).
    """

    c_sign: int
    c_exp: int
    d_sign: int
    d_exp: int
    kind: str = "f"
    scale: int = 1

    def __post_init__(self):
        if self.c_sign not in (1, -1) or self.d_sign not in (1, -1):
            raise ValueError("theta argument signs must be +1 or -1")
        if self.c_exp < 0 or self.d_exp < 0 or self.c_exp + self.d_exp < 1:
            raise ValueError("theta arguments need exponents >= 0 with sum >= 1")

    @classmethod
    def general(cls, c_sign: int, c_exp: int, d_sign: int, d_exp: int) -> "ThetaAtom":
        return cls(c_sign, c_exp, d_sign, d_exp)

    @classmethod
    def phi(cls, k: int = 1) -> "ThetaAtom":
        return cls(1, k, 1, k, "phi", k)

    @classmethod
    def psi(cls, k: int = 1) -> "ThetaAtom":
        return cls(1, k, 1, 3 * k, "psi", k)


def theta_terms(t: ThetaAtom, order: int) -> dict[int, int]:
    """Nonzero terms of the bilateral sum sum_m c^(m(m+1)/2) d^(m(m-1)/2) up to q^order."""
    terms: dict[int, int] = {}

    def exponent(m):
        return t.c_exp * (m * (m + 1) // 2) + t.d_exp * (m * (m - 1) // 2)

    def sign(m):
        s = 1
        if t.c_sign < 0 and (m * (m + 1) // 2) % 2:
            s = -s
        if t.d_sign < 0 and (m * (m - 1) // 2) % 2:
            s = -s
        return s

    # exponent(m) is nondecreasing in |m| on each side of 0
    for step in (1, -1):
        m = 0 if step == 1 else -1
        while True:
            e = exponent(m)
            if e > order:
                break
            terms[e] = terms.get(e, 0) + sign(m)
            m += step
    return {e: c for e, c in terms.items() if c}


def theta_series(t: ThetaAtom, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    return TruncatedSeries.from_sparse(theta_terms(t, order), order, ring)


def jacobi_product_series(t: ThetaAtom, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    """f(c, d) as (-c; cd)_inf (-d; cd)_inf (cd; cd)_inf."""
    cd_sign, cd_exp = t.c_sign * t.d_sign, t.c_exp + t.d_exp
    result = qpoch(-t.c_sign, t.c_exp, cd_sign, cd_exp, order, ring)
    result = result * qpoch(-t.d_sign, t.d_exp, cd_sign, cd_exp, order, ring)
    return result * qpoch(cd_sign, cd_exp, cd_sign, cd_exp, order, ring)
