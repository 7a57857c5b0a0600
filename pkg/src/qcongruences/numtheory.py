"""Primes, the Legendre symbol, and the prime conditions that gate each family."""

from __future__ import annotations

from dataclasses import dataclass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def legendre(xi: int, p: int) -> int:
    """(xi/p) by Euler's criterion; p must be an odd prime."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    r = pow(xi % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


@dataclass(frozen=True)
class PrimeCondition:
    """Primes p >= min_p, optionally restricted to (xi/p) == required_value."""

    kind: str = "any-prime"  # or "legendre"
    min_p: int = 3
    xi: int = 0
    required_value: int = -1

    def __post_init__(self):
        if self.kind not in ("any-prime", "legendre"):
            raise ValueError(f"unknown prime condition kind {self.kind!r}")

    def admits(self, p: int) -> bool:
        if p < self.min_p or p == 2 or not is_prime(p):
            return False
        if self.kind == "any-prime":
            return True
        if self.xi % p == 0:
            return False
        return legendre(self.xi, p) == self.required_value

    def describe(self) -> str:
        if self.kind == "any-prime":
            return f"p >= {self.min_p}"
        return f"p >= {self.min_p}, ({self.xi}/p) = {self.required_value}"


def admissible_primes(cond: PrimeCondition, bound: int) -> list[int]:
    return [p for p in primes_up_to(bound) if cond.admits(p)]
