"""Counting restricted colour (over)partitions.

A part kind is a pair (value, colour).  A constraint fixes, for each residue
of the part value modulo ``modulus``, how many colours that residue carries
(zero excludes it), and whether the first occurrence of each kind may be
overlined.  :func:`count_dp` (a knapsack over the generating function) and
:func:`count_exhaustive` (listing partitions) compute the same numbers along
unrelated routes and serve as oracles for each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

EXHAUSTIVE_LIMIT = 30


@dataclass(frozen=True)
class PartitionConstraint:
    modulus: int
    colours: tuple[int, ...]  # colours[r] for parts congruent to r mod modulus
    overlined: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        if len(self.colours) != self.modulus:
            raise ValueError("need one colour count per residue")
        if any(c < 0 for c in self.colours) or not any(self.colours):
            raise ValueError("colour counts must be >= 0 with at least one positive")

    @classmethod
    def from_map(cls, modulus: int, colours: dict[int, int], overlined: bool = False,
                 name: str = "") -> "PartitionConstraint":
        return cls(modulus, tuple(colours.get(r, 0) for r in range(modulus)), overlined, name)

    def colours_of(self, value: int) -> int:
        return self.colours[value % self.modulus]

    def kinds(self, limit: int) -> list[tuple[int, int]]:
        """All (value, colour) kinds with value <= limit, in increasing value."""
        return [(v, c) for v in range(1, limit + 1) for c in range(self.colours_of(v))]


def overpartition_constraint(k: int) -> PartitionConstraint:
    """Overpartitions with no part divisible by 2k and parts = k (mod 2k) in two colours."""
    colours = {r: 1 for r in range(1, 2 * k)}
    colours[k] = 2
    return PartitionConstraint.from_map(2 * k, colours, True, f"g{k}")


H_CONSTRAINT = PartitionConstraint.from_map(
    8, {1: 2, 2: 1, 3: 2, 4: 2, 5: 2, 6: 1, 7: 2}, False, "h")


def count_dp(c: PartitionConstraint, limit: int) -> list[int]:
    """counts[n] for n = 0..limit: coefficients of prod_kinds (1 + q^v)^[overlined] / (1 - q^v)."""
    counts = [0] * (limit + 1)
    counts[0] = 1
    for v in range(1, limit + 1):
        for _ in range(c.colours_of(v)):
            # unbounded copies of the kind
            for n in range(v, limit + 1):
                counts[n] += counts[n - v]
            if c.overlined:
                # optional single overlined occurrence
                for n in range(limit, v - 1, -1):
                    counts[n] += counts[n - v]
    return counts


def iter_multisets(c: PartitionConstraint, n: int):
    """Yield each partition of n as a tuple of (value, colour, multiplicity), kinds descending."""
    kinds = c.kinds(n)[::-1]

    def rec(i, remaining, chosen):
        if remaining == 0:
            yield tuple(chosen)
            return
        for j in range(i, len(kinds)):
            v, col = kinds[j]
            if v > remaining:
                continue
            for mult in range(remaining // v, 0, -1):
                chosen.append((v, col, mult))
                yield from rec(j + 1, remaining - mult * v, chosen)
                chosen.pop()

    yield from rec(0, n, [])


def iter_value_partitions(c: PartitionConstraint, n: int):
    """Yield partitions of n into allowed values as ((value, multiplicity), ...), values descending."""
    values = [v for v in range(n, 0, -1) if c.colours_of(v)]

    def rec(i, remaining, chosen):
        if remaining == 0:
            yield tuple(chosen)
            return
        for j in range(i, len(values)):
            v = values[j]
            if v > remaining:
                continue
            for mult in range(remaining // v, 0, -1):
                chosen.append((v, mult))
                yield from rec(j + 1, remaining - mult * v, chosen)
                chosen.pop()

    yield from rec(0, n, [])


def _colourings(colours: int, mult: int, overlined: bool) -> int:
    """Ways to spread mult copies of one value over its colours, times overline choices."""
    total = 0
    for split in itertools.product(range(mult + 1), repeat=colours):
        if sum(split) != mult:
            continue
        used = sum(1 for k in split if k)
        # each colour present may have its first occurrence overlined or not
        total += sum(1 for _ in itertools.product((False, True), repeat=used if overlined else 0))
    return total


def count_exhaustive(c: PartitionConstraint, n: int) -> int:
    """Brute-force count: list partitions into allowed values, then every colour split and overline subset.

    Choices for different values are independent, so their counts multiply.
    """
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_LIMIT}")
    if n < 0:
        return 0
    memo: dict[tuple[int, int], int] = {}
    total = 0
    for parts in iter_value_partitions(c, n):
        ways = 1
        for v, mult in parts:
            key = (c.colours_of(v), mult)
            if key not in memo:
                memo[key] = _colourings(key[0], mult, c.overlined)
            ways *= memo[key]
        total += ways
    return total


def general_pt(t: int, limit: int) -> list[int]:
    """p_t(n) for n = 0..limit: partitions where every part has t colours."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return count_dp(PartitionConstraint(1, (t,)), limit)
