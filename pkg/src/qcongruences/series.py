"""Dense truncated power series in q over the integers or over Z/2^k.

A :class:`TruncatedSeries` holds the coefficients of q^0 .. q^N.  Exact series
keep arbitrary-precision Python ints in an object array; residue series keep
normalized int64 residues.  Values are immutable; every operation returns a
new series whose order is the minimum of its inputs' orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
import numpy as np

# Coefficient counts above which multiplication switches from schoolbook
# convolution to Kronecker substitution (packed big-integer product).
RESIDUE_SCHOOLBOOK_LIMIT = 8192
EXACT_SCHOOLBOOK_LIMIT = 48

# Multiply by shifted copies when one factor has at most this many nonzeros
# (eta symbols and theta functions are very sparse).
SPARSE_TERMS_LIMIT = 1024


class RingMismatchError(ValueError):
    """Binary operation on series over different coefficient rings."""


class NonUnitError(ArithmeticError):
    """Division by a series whose constant term is not a unit."""


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: exact integers (``bits=None``) or Z/2^bits."""

    bits: int | None = None

    def __post_init__(self):
        if self.bits is not None and not 1 <= self.bits <= 16:
            raise ValueError(f"residue ring needs 1 <= bits <= 16, got {self.bits}")

    @classmethod
    def mod(cls, k: int) -> "Ring":
        return cls(k)

    @property
    def exact(self) -> bool:
        return self.bits is None

    @property
    def modulus(self) -> int | None:
        return None if self.bits is None else 1 << self.bits

    def is_unit(self, value: int) -> bool:
        if self.bits is None:
            return value in (1, -1)
        return value % 2 == 1

    def inverse(self, value: int) -> int:
        if not self.is_unit(value):
            raise NonUnitError(f"{value} is not a unit in {self}")
        if self.bits is None:
            return value
        return pow(int(value), -1, self.modulus)

    def __str__(self):
        return "ZZ" if self.bits is None else f"ZZ/{1 << self.bits}"


EXACT = Ring()


def _as_array(values: Iterable[int], ring: Ring) -> np.ndarray:
    vals = [int(v) for v in values]
    if ring.exact:
        arr = np.empty(len(vals), dtype=object)
        arr[:] = vals
        return arr
    m = ring.modulus
    return np.array([v % m for v in vals], dtype=np.int64)


class TruncatedSeries:
    """Power series c_0 + c_1 q + ... + c_N q^N known exactly up to q^N."""

    __slots__ = ("_coeffs", "_ring")

    def __init__(self, coeffs: Iterable[int] | np.ndarray, ring: Ring = EXACT):
        arr = _as_array(coeffs, ring)
        if arr.ndim != 1 or len(arr) == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        arr.flags.writeable = False
        self._coeffs = arr
        self._ring = ring

    @classmethod
    def _wrap(cls, arr: np.ndarray, ring: Ring) -> "TruncatedSeries":
        # trusted constructor: arr already has the right dtype and residues
        obj = cls.__new__(cls)
        arr.flags.writeable = False
        obj._coeffs = arr
        obj._ring = ring
        return obj

    @classmethod
    def zero(cls, order: int, ring: Ring = EXACT) -> "TruncatedSeries":
        return cls._wrap(_zeros(order + 1, ring), ring)

    @classmethod
    def constant(cls, value: int, order: int, ring: Ring = EXACT) -> "TruncatedSeries":
        arr = _zeros(order + 1, ring)
        arr[0] = value if ring.exact else value % ring.modulus
        return cls._wrap(arr, ring)

    @classmethod
    def monomial(cls, exponent: int, order: int, ring: Ring = EXACT, coeff: int = 1) -> "TruncatedSeries":
        arr = _zeros(order + 1, ring)
        if exponent <= order:
            arr[exponent] = coeff if ring.exact else coeff % ring.modulus
        return cls._wrap(arr, ring)

    @classmethod
    def from_sparse(cls, terms: dict[int, int], order: int, ring: Ring = EXACT) -> "TruncatedSeries":
        arr = _zeros(order + 1, ring)
        for e, c in terms.items():
            if 0 <= e <= order:
                arr[e] += c
        if not ring.exact:
            arr %= ring.modulus
        return cls._wrap(arr, ring)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def ring(self) -> Ring:
        return self._ring

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [int(c) for c in self._coeffs[i]]
        return int(self._coeffs[i])

    def tolist(self) -> list[int]:
        return [int(c) for c in self._coeffs]

    def nonzero_terms(self) -> list[tuple[int, int]]:
        idx = np.flatnonzero(self._coeffs != 0)
        return [(int(i), int(self._coeffs[i])) for i in idx]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend series of order {self.order} to {order}")
        if order == self.order:
            return self
        return TruncatedSeries._wrap(self._coeffs[: order + 1].copy(), self._ring)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self._ring == other._ring
            and self.order == other.order
            and bool(np.all(self._coeffs == other._coeffs))
        )

    def __hash__(self):
        return hash((self._ring, tuple(self.tolist())))

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.tolist()[:12])
        more = ", ..." if self.order >= 12 else ""
        return f"TruncatedSeries([{shown}{more}], order={self.order}, ring={self._ring})"

    def __add__(self, other):
        return add(self, _promote(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _promote(other, self))

    def __rsub__(self, other):
        return sub(_promote(other, self), self)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return NotImplemented

    def __truediv__(self, other):
        return div_unit(self, _promote(other, self))

    def __pow__(self, n: int):
        return power(self, n)


def _zeros(n: int, ring: Ring) -> np.ndarray:
    if ring.exact:
        arr = np.empty(n, dtype=object)
        arr[:] = 0
        return arr
    return np.zeros(n, dtype=np.int64)


def _promote(value, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(value, TruncatedSeries):
        return value
    if isinstance(value, int):
        return TruncatedSeries.constant(value, like.order, like.ring)
    raise TypeError(f"cannot combine TruncatedSeries with {type(value).__name__}")


def _common(a: TruncatedSeries, b: TruncatedSeries) -> tuple[Ring, int]:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")
    return a.ring, min(a.order, b.order)


def _normalize(arr: np.ndarray, ring: Ring) -> np.ndarray:
    if not ring.exact:
        np.remainder(arr, ring.modulus, out=arr)
    return arr


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    ring, n = _common(a, b)
    arr = a.coeffs[: n + 1] + b.coeffs[: n + 1]
    return TruncatedSeries._wrap(_normalize(arr, ring), ring)


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    ring, n = _common(a, b)
    arr = a.coeffs[: n + 1] - b.coeffs[: n + 1]
    return TruncatedSeries._wrap(_normalize(arr, ring), ring)


def scale(a: TruncatedSeries, k: int) -> TruncatedSeries:
    if not a.ring.exact:
        k %= a.ring.modulus
    arr = a.coeffs * k
    return TruncatedSeries._wrap(_normalize(arr, a.ring), a.ring)


def shift(a: TruncatedSeries, s: int) -> TruncatedSeries:
    """Multiply by q^s (s >= 0), keeping the order."""
    if s < 0:
        raise ValueError("shift exponent must be nonnegative")
    arr = _zeros(a.order + 1, a.ring)
    if s <= a.order:
        arr[s:] = a.coeffs[: a.order + 1 - s]
    return TruncatedSeries._wrap(arr, a.ring)


# --- multiplication -------------------------------------------------------


def _mul_sparse(dense: np.ndarray, terms: list[tuple[int, int]], n: int, ring: Ring) -> np.ndarray:
    out = _zeros(n + 1, ring)
    for e, c in terms:
        if e > n:
            break
        out[e:] += c * dense[: n + 1 - e]
        if not ring.exact and abs(c) > 1:
            np.remainder(out, ring.modulus, out=out)
    return _normalize(out, ring)


def _slot_bytes(bits: int) -> int:
    return (bits + 7) // 8


def _pack_nonneg(values: Sequence[int], nbytes: int) -> gmpy2.mpz:
    blob = b"".join(int(v).to_bytes(nbytes, "little") for v in values)
    return gmpy2.mpz(int.from_bytes(blob, "little"))


def _unpack_nonneg(x: gmpy2.mpz, count: int, nbytes: int) -> list[int]:
    x = int(x)
    width = count * nbytes
    blob = (x & ((1 << (8 * width)) - 1)).to_bytes(width, "little")
    return [int.from_bytes(blob[i * nbytes:(i + 1) * nbytes], "little") for i in range(count)]


def _mul_kronecker_exact(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    a_list = [int(v) for v in a[: n + 1]]
    b_list = [int(v) for v in b[: n + 1]]
    bound = max(1, max(abs(v) for v in a_list)).bit_length() + max(
        1, max(abs(v) for v in b_list)
    ).bit_length()
    nbytes = _slot_bytes(bound + (n + 1).bit_length() + 2)

    def halves(vals):
        pos = _pack_nonneg([v if v > 0 else 0 for v in vals], nbytes)
        neg = _pack_nonneg([-v if v < 0 else 0 for v in vals], nbytes)
        return pos, neg

    ap, an = halves(a_list)
    bp, bn = halves(b_list)
    plus = _unpack_nonneg(ap * bp + an * bn, n + 1, nbytes)
    minus = _unpack_nonneg(ap * bn + an * bp, n + 1, nbytes)
    out = np.empty(n + 1, dtype=object)
    out[:] = [x - y for x, y in zip(plus, minus)]
    return out


def _mul_kronecker_residue(a: np.ndarray, b: np.ndarray, n: int, ring: Ring) -> np.ndarray:
    # slot sums are < (n+1) * (2^bits)^2; 64-bit slots cover every size we build
    width = 8 if (n + 1) * (ring.modulus - 1) ** 2 >= 1 << 32 else 4
    dtype = "<u8" if width == 8 else "<u4"
    pa = gmpy2.mpz(int.from_bytes(a[: n + 1].astype(dtype).tobytes(), "little"))
    pb = gmpy2.mpz(int.from_bytes(b[: n + 1].astype(dtype).tobytes(), "little"))
    prod = int(pa * pb) & ((1 << (8 * width * (n + 1))) - 1)
    raw = np.frombuffer(prod.to_bytes(width * (n + 1), "little"), dtype=dtype)
    return (raw % ring.modulus).astype(np.int64)


def _nnz_terms(arr: np.ndarray, n: int, limit: int) -> list[tuple[int, int]] | None:
    idx = np.flatnonzero(arr[: n + 1] != 0)
    if len(idx) > limit:
        return None
    return [(int(i), int(arr[i])) for i in idx]


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order."""
    ring, n = _common(a, b)
    ac, bc = a.coeffs, b.coeffs
    limit = min(SPARSE_TERMS_LIMIT, max(8, (n + 1) // 16))
    terms = _nnz_terms(bc, n, limit)
    if terms is not None:
        return TruncatedSeries._wrap(_mul_sparse(ac, terms, n, ring), ring)
    terms = _nnz_terms(ac, n, limit)
    if terms is not None:
        return TruncatedSeries._wrap(_mul_sparse(bc, terms, n, ring), ring)
    if ring.exact:
        if n + 1 <= EXACT_SCHOOLBOOK_LIMIT:
            arr = np.convolve(ac[: n + 1], bc[: n + 1])[: n + 1]
        else:
            arr = _mul_kronecker_exact(ac, bc, n)
        return TruncatedSeries._wrap(arr, ring)
    if n + 1 <= RESIDUE_SCHOOLBOOK_LIMIT:
        arr = np.convolve(ac[: n + 1], bc[: n + 1])[: n + 1] % ring.modulus
    else:
        arr = _mul_kronecker_residue(ac, bc, n, ring)
    return TruncatedSeries._wrap(arr, ring)


def power(a: TruncatedSeries, n: int) -> TruncatedSeries:
    """a**n by repeated squaring; negative n inverts first."""
    if n < 0:
        return power(inverse(a), -n)
    result = TruncatedSeries.constant(1, a.order, a.ring)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


# --- division -------------------------------------------------------------


def inverse(b: TruncatedSeries) -> TruncatedSeries:
    """1/b to b's order, by Newton iteration g <- g(2 - b g)."""
    ring = b.ring
    b0 = int(b.coeffs[0])
    if not ring.is_unit(b0):
        raise NonUnitError(f"constant term {b0} is not a unit in {ring}")
    g = TruncatedSeries.constant(ring.inverse(b0), 0, ring)
    prec = 1
    while prec < b.order + 1:
        prec = min(2 * prec, b.order + 1)
        bt = b.truncate(prec - 1)
        gt = _extend(g, prec - 1)
        g = mul(gt, sub(TruncatedSeries.constant(2, prec - 1, ring), mul(bt, gt)))
    return g


def _extend(a: TruncatedSeries, order: int) -> TruncatedSeries:
    arr = _zeros(order + 1, a.ring)
    arr[: a.order + 1] = a.coeffs
    return TruncatedSeries._wrap(arr, a.ring)


def div_unit(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """The series c with b*c = a, for b with a unit constant term."""
    ring, n = _common(a, b)
    if not ring.is_unit(int(b.coeffs[0])):
        raise NonUnitError(f"constant term {int(b.coeffs[0])} is not a unit in {ring}")
    terms = _nnz_terms(b.coeffs, n, 1)
    if terms is not None and terms[0][0] == 0:
        return scale(a.truncate(n), ring.inverse(terms[0][1]))
    return mul(a.truncate(n), inverse(b.truncate(n)))


def div_recursive(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficient recursion c_n = b_0^{-1}(a_n - sum_{i>=1} b_i c_{n-i}).

    Quadratic; kept as an independent reference for :func:`div_unit`.
    """
    ring, n = _common(a, b)
    inv0 = ring.inverse(int(b.coeffs[0]))
    bl = [int(v) for v in b.coeffs[: n + 1]]
    al = [int(v) for v in a.coeffs[: n + 1]]
    c: list[int] = []
    for k in range(n + 1):
        acc = al[k] - sum(bl[i] * c[k - i] for i in range(1, k + 1) if bl[i])
        val = inv0 * acc
        c.append(val if ring.exact else val % ring.modulus)
    return TruncatedSeries(c, ring)


# --- extraction and substitution -------------------------------------------


def ap_extract(a: TruncatedSeries, m: int, r: int) -> TruncatedSeries:
    """sum_n a(m n + r) q^n, of order floor((N - r)/m)."""
    if m < 1:
        raise ValueError("stride must be positive")
    if not 0 <= r < m:
        raise ValueError(f"residue {r} not in 0..{m - 1}")
    if r > a.order:
        raise ValueError(f"residue {r} exceeds series order {a.order}")
    return TruncatedSeries._wrap(a.coeffs[r::m].copy(), a.ring)


def coefficient_progression(a: TruncatedSeries, stride: int, offset: int) -> TruncatedSeries:
    """sum_n a(stride n + offset) q^n for any offset >= 0 (offset may exceed stride)."""
    if stride < 1 or offset < 0:
        raise ValueError("need stride >= 1 and offset >= 0")
    if offset > a.order:
        raise ValueError(f"offset {offset} exceeds series order {a.order}")
    return TruncatedSeries._wrap(a.coeffs[offset::stride].copy(), a.ring)


def substitute_power(a: TruncatedSeries, k: int, order: int | None = None) -> TruncatedSeries:
    """a(q^k), known up to q^(k(N+1)-1) (or ``order`` when that is smaller)."""
    if k < 1:
        raise ValueError("substitution power must be positive")
    new_order = k * (a.order + 1) - 1
    if order is not None:
        new_order = min(new_order, order)
    arr = _zeros(new_order + 1, a.ring)
    src = a.coeffs[: new_order // k + 1]
    arr[: len(src) * k: k] = src
    return TruncatedSeries._wrap(arr, a.ring)


def reduce_mod(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """Reduce coefficients into Z/2^k."""
    ring = Ring.mod(k)
    if not a.ring.exact and a.ring.bits < k:
        raise RingMismatchError(f"cannot lift {a.ring} to {ring}")
    if a.ring.exact:
        m = ring.modulus
        arr = np.array([int(c) % m for c in a.coeffs], dtype=np.int64)
    else:
        arr = a.coeffs % ring.modulus
    return TruncatedSeries._wrap(arr, ring)


def first_mismatch(a: TruncatedSeries, b: TruncatedSeries, k: int | None = None):
    """First index where a and b differ (mod 2^k if given), or None.

    Compares up to the common order; returns ``(index, a_value, b_value)``.
    """
    n = min(a.order, b.order)
    x, y = a.coeffs[: n + 1], b.coeffs[: n + 1]
    if k is not None:
        m = 1 << k
        if x.dtype == object:
            x = np.array([int(v) % m for v in x], dtype=np.int64)
        else:
            x = x % m
        if y.dtype == object:
            y = np.array([int(v) % m for v in y], dtype=np.int64)
        else:
            y = y % m
    diff = np.flatnonzero(x != y)
    if len(diff) == 0:
        return None
    i = int(diff[0])
    return i, int(x[i]), int(y[i])
