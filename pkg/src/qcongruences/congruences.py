"""Registered congruence claims and the machinery that checks them.

A claim looks at the coefficients c(stride*n + offset) of a named series,
where stride and offset may grow with p^(2*alpha).  Three shapes occur:

* ``ap-vanishing``: c(stride*n + offset) = 0 (mod 2^k) for every n.
* ``series-congruence``: sum_n c(stride*n + offset) q^n = rhs (mod 2^k), or
  exactly when the modulus is omitted.
* ``j-family``: c(a p^(2a+2) n + a p^(2a+1) j + offset) = 0 (mod 2^k) for
  1 <= j <= p-1.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from .named import named_series
from .numtheory import PrimeCondition, admissible_primes
from .qexpr import eval_qexpr, parse_qexpr
from .report import VerificationReport, timed
from .series import EXACT, Ring, TruncatedSeries, coefficient_progression, first_mismatch

_PLACEHOLDER = re.compile(r"\{(\d*)p(?:\^(\d+))?\}")
KINDS = ("ap-vanishing", "series-congruence", "j-family")
MODULI = (2, 4, 8, 16)


class RegistryError(ValueError):
    """A registry record is malformed or describes an impossible check."""


@dataclass(frozen=True)
class Offset:
    """(u*P + v)/w for the prime power P in play."""

    u: int = 0
    v: int = 0
    w: int = 1

    def at(self, P: int) -> int:
        num = self.u * P + self.v
        if num % self.w:
            raise RegistryError(f"offset ({self.u}*{P}+{self.v})/{self.w} is not an integer")
        val = num // self.w
        if val < 0:
            raise RegistryError(f"offset ({self.u}*{P}+{self.v})/{self.w} is negative")
        return val


@dataclass(frozen=True)
class CongruenceCheck:
    id: str
    label: str
    series: str
    kind: str
    stride: int
    offset: Offset
    modulus: int | None  # None: exact equality
    rhs: str | None = None
    prime: PrimeCondition | None = None
    alpha: str = "family"  # "family": claimed for all alpha >= 0; "fixed": alpha = 0 only
    suite: str = "congruences"
    theorem: str = ""
    stride_p_extra: int = 0
    offset_p_extra: int = 0
    note: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RegistryError(f"{self.id}: unknown kind {self.kind!r}")
        if self.modulus is not None and (self.modulus < 2 or self.modulus & (self.modulus - 1)):
            raise RegistryError(f"{self.id}: modulus must be a power of 2")
        if self.modulus is None and self.kind != "series-congruence":
            raise RegistryError(f"{self.id}: only series congruences may be exact")
        if self.kind == "series-congruence" and not self.rhs:
            raise RegistryError(f"{self.id}: series congruence needs a right-hand side")
        if self.kind == "j-family" and self.prime is None:
            raise RegistryError(f"{self.id}: j-family needs a prime condition")
        if self.stride < 1:
            raise RegistryError(f"{self.id}: stride must be positive")

    @property
    def bits(self) -> int | None:
        return None if self.modulus is None else self.modulus.bit_length() - 1

    @property
    def ring(self) -> Ring:
        return EXACT if self.modulus is None else Ring.mod(self.bits)

    def rhs_text(self, p: int | None) -> str:
        """The right-hand side with ``{p}``, ``{8p}``, ``{p^2}``-style placeholders filled in."""
        text = self.rhs or "0"
        if "{" not in text:
            return text
        if p is None:
            raise RegistryError(f"{self.id}: right-hand side depends on p")

        def fill(m):
            return str(int(m.group(1) or 1) * p ** int(m.group(2) or 1))

        return _PLACEHOLDER.sub(fill, text)

    def strengthened(self) -> "CongruenceCheck":
        """The same claim with the modulus doubled (a mutation that should fail)."""
        if self.modulus is None:
            raise RegistryError(f"{self.id}: exact claims have no modulus to strengthen")
        return replace(self, id=self.id + "*2", modulus=2 * self.modulus)

    def validate_offsets(self, primes: Iterable[int] = (), alphas: Iterable[int] = (0,)):
        """Raise RegistryError unless every offset in play is a nonnegative integer."""
        for p in primes:
            for a in alphas:
                self.indices(p, a)
        if self.kind == "ap-vanishing" or self.prime is None:
            self.indices(None, 0)

    def indices(self, p: int | None, alpha: int) -> tuple[int, int, int]:
        """(stride, offset, j_step) at prime p and exponent alpha."""
        if self.kind == "ap-vanishing" or (p is None and alpha == 0):
            base_p = p if p is not None else 1
            if p is None and (self.stride_p_extra or self.offset_p_extra):
                raise RegistryError(f"{self.id}: indices depend on p")
            P = base_p ** self.offset_p_extra
            return self.stride * base_p ** self.stride_p_extra, self.offset.at(P), 0
        if p is None:
            raise RegistryError(f"{self.id}: alpha > 0 needs a prime")
        if self.kind == "j-family":
            P2 = p ** (2 * alpha + 2)
            return self.stride * P2, self.offset.at(P2), self.stride * p ** (2 * alpha + 1)
        P = p ** (2 * alpha)
        return (self.stride * P * p ** self.stride_p_extra,
                self.offset.at(P * p ** self.offset_p_extra), 0)


def _prime_from_record(d: dict | None) -> PrimeCondition | None:
    if not d:
        return None
    return PrimeCondition(d.get("kind", "any-prime"), d.get("min_p", 3), d.get("xi", 0),
                          d.get("required_value", -1))


def check_from_record(d: dict[str, Any]) -> CongruenceCheck:
    try:
        off = d.get("offset", [0, 0, 1])
        chk = CongruenceCheck(
            id=d["id"], label=d.get("label", d["id"]), series=d["series"], kind=d["kind"],
            stride=int(d["stride"]), offset=Offset(*off), modulus=d.get("modulus"),
            rhs=d.get("rhs"), prime=_prime_from_record(d.get("prime")),
            alpha=d.get("alpha", "family"), suite=d.get("suite", "congruences"),
            theorem=d.get("theorem", ""), stride_p_extra=d.get("stride_p_extra", 0),
            offset_p_extra=d.get("offset_p_extra", 0), note=d.get("note", ""),
        )
    except (KeyError, TypeError) as exc:
        raise RegistryError(f"bad registry record {d!r}: {exc}") from None
    if chk.modulus is not None and chk.modulus not in MODULI:
        raise RegistryError(f"{chk.id}: modulus {chk.modulus} not in {MODULI}")
    if chk.rhs:
        parse_qexpr(chk.rhs_text(5))
    # offsets must be integral before any series is built
    primes = admissible_primes(chk.prime, 50) if chk.prime else []
    chk.validate_offsets(primes, (0,) if chk.alpha == "fixed" else (0, 1))
    return chk


def load_registry(path: str | Path | None = None) -> list[CongruenceCheck]:
    """Read a JSON-lines registry (blank lines and '#' comments ignored)."""
    if path is None:
        text = resources.files("qcongruences").joinpath("data/registry.jsonl").read_text("utf-8")
        where = "built-in registry"
    else:
        text = Path(path).read_text("utf-8")
        where = str(path)
    checks, seen = [], set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RegistryError(f"{where}:{lineno}: {exc}") from None
        try:
            chk = check_from_record(record)
        except ValueError as exc:
            raise RegistryError(f"{where}:{lineno}: {exc}") from None
        if chk.id in seen:
            raise RegistryError(f"{where}:{lineno}: duplicate id {chk.id!r}")
        seen.add(chk.id)
        checks.append(chk)
    return checks


class SeriesCache:
    """Shared store of the longest series computed so far per (name, ring)."""

    def __init__(self):
        self._store: dict[tuple[str, Ring], TruncatedSeries] = {}
        self._lock = threading.Lock()

    def get(self, name: str, order: int, ring: Ring) -> TruncatedSeries:
        key = (name, ring)
        with self._lock:
            have = self._store.get(key)
        if have is not None and have.order >= order:
            return have.truncate(order)
        s = named_series(name, order, ring)
        with self._lock:
            cur = self._store.get(key)
            if cur is None or cur.order < s.order:
                self._store[key] = s
        return s


_DEFAULT_CACHE = SeriesCache()
DEFAULT_MAX_ORDER = 4_000_000


def _base_report(c: CongruenceCheck, params: dict) -> VerificationReport:
    return VerificationReport(c.id, c.label, params)


def _residue(x: int, modulus: int | None) -> int:
    return x if modulus is None else x % modulus


def check_ap_vanishing(c: CongruenceCheck, n_terms: int, cache: SeriesCache | None = None,
                       max_order: int = DEFAULT_MAX_ORDER) -> VerificationReport:
    if c.kind != "ap-vanishing":
        raise ValueError(f"{c.id} is a {c.kind}, not ap-vanishing")
    cache = cache or _DEFAULT_CACHE
    stride, offset, _ = c.indices(None, 0)
    order = stride * n_terms + offset
    report = _base_report(c, {"N_terms": n_terms, "order": order, "modulus": c.modulus})
    with timed(report):
        if order > max_order:
            return report.skip(f"needs order {order} > budget {max_order}")
        coeffs = coefficient_progression(cache.get(c.series, order, c.ring), stride, offset)
        for n in range(n_terms + 1):
            if coeffs[n] % c.modulus:
                return report.fail("nonzero residue", n=n, index=stride * n + offset,
                                   lhs=coeffs[n] % c.modulus, rhs=0)
    return report


def check_series_congruence(c: CongruenceCheck, p: int | None, alpha: int, n_terms: int,
                            cache: SeriesCache | None = None,
                            max_order: int = DEFAULT_MAX_ORDER) -> VerificationReport:
    if c.kind != "series-congruence":
        raise ValueError(f"{c.id} is a {c.kind}, not a series congruence")
    if alpha > 0 and c.alpha == "fixed":
        raise ValueError(f"{c.id} is claimed for alpha = 0 only")
    if p is not None and c.prime is not None and not c.prime.admits(p):
        raise ValueError(f"{c.id}: p = {p} is not admitted ({c.prime.describe()})")
    cache = cache or _DEFAULT_CACHE
    params = {"p": p, "alpha": alpha, "N_terms": n_terms, "modulus": c.modulus}
    report = _base_report(c, params)
    with timed(report):
        stride, offset, _ = c.indices(p, alpha)
        order = stride * n_terms + offset
        params.update(stride=stride, offset=offset, order=order)
        if order > max_order:
            return report.skip(f"needs order {order} > budget {max_order}")
        lhs = coefficient_progression(cache.get(c.series, order, c.ring), stride, offset)
        lhs = lhs.truncate(n_terms)
        rhs = eval_qexpr(c.rhs_text(p), n_terms, c.ring)
        miss = first_mismatch(lhs, rhs)
        if miss:
            n, a, b = miss
            return report.fail("coefficients differ", n=n, index=stride * n + offset,
                               lhs=_residue(a, c.modulus), rhs=_residue(b, c.modulus))
    return report


def check_j_family(c: CongruenceCheck, p: int, alpha: int, n_terms: int,
                   j_values: Iterable[int] | None = None, cache: SeriesCache | None = None,
                   max_order: int = DEFAULT_MAX_ORDER) -> VerificationReport:
    if c.kind != "j-family":
        raise ValueError(f"{c.id} is a {c.kind}, not a j-family")
    if alpha > 0 and c.alpha == "fixed":
        raise ValueError(f"{c.id} is claimed for alpha = 0 only")
    if not c.prime.admits(p):
        raise ValueError(f"{c.id}: p = {p} is not admitted ({c.prime.describe()})")
    js = list(range(1, p)) if j_values is None else list(j_values)
    if any(not 1 <= j <= p - 1 for j in js):
        raise ValueError(f"j must lie in 1..{p - 1}")
    cache = cache or _DEFAULT_CACHE
    stride, offset, jstep = c.indices(p, alpha)
    order = stride * n_terms + jstep * max(js, default=0) + offset
    params = {"p": p, "alpha": alpha, "N_terms": n_terms, "j": [min(js), max(js)] if js else [],
              "modulus": c.modulus, "stride": stride, "j_step": jstep, "offset": offset, "order": order}
    report = _base_report(c, params)
    with timed(report):
        if order > max_order:
            return report.skip(f"needs order {order} > budget {max_order}")
        s = cache.get(c.series, order, c.ring)
        for j in js:
            coeffs = coefficient_progression(s, stride, jstep * j + offset)
            for n in range(n_terms + 1):
                if coeffs[n] % c.modulus:
                    return report.fail("nonzero residue", j=j, n=n, index=stride * n + jstep * j + offset,
                                       lhs=coeffs[n] % c.modulus, rhs=0)
    return report


def smallest_admitted_prime(c: CongruenceCheck, bound: int = 100) -> int | None:
    if c.prime is None:
        return None
    primes = admissible_primes(c.prime, bound)
    return primes[0] if primes else None


@dataclass
class CheckRun:
    """One concrete evaluation of a registered claim."""

    check: CongruenceCheck
    p: int | None
    alpha: int
    n_terms: int
    tag: str = ""

    def run(self, cache: SeriesCache | None = None, max_order: int = DEFAULT_MAX_ORDER) -> VerificationReport:
        c = self.check
        if c.kind == "ap-vanishing":
            rep = check_ap_vanishing(c, self.n_terms, cache, max_order)
        elif c.kind == "series-congruence":
            rep = check_series_congruence(c, self.p, self.alpha, self.n_terms, cache, max_order)
        else:
            rep = check_j_family(c, self.p, self.alpha, self.n_terms, cache=cache, max_order=max_order)
        rep.check_id = self.run_id
        return rep

    @property
    def run_id(self) -> str:
        c = self.check
        if c.kind == "ap-vanishing" or (self.p is None and self.alpha == 0):
            return c.id + self.tag
        return f"{c.id}[p={self.p},alpha={self.alpha}]{self.tag}"


def plan_runs(c: CongruenceCheck, alphas: Iterable[int] = (0,), primes: Iterable[int] | str = "auto",
              prime_bound: int = 100, n_terms: int = 500, family_terms: int = 20) -> list[CheckRun | VerificationReport]:
    """Expand a claim into runs; claims with no admitted prime become skipped reports."""
    if c.kind == "ap-vanishing":
        return [CheckRun(c, None, 0, n_terms)]
    if c.prime is None:
        return [CheckRun(c, None, 0, n_terms)]
    if primes == "auto":
        ps = admissible_primes(c.prime, prime_bound)[:1]
    else:
        ps = [p for p in primes if c.prime.admits(p)]
    if not ps:
        rep = VerificationReport(c.id, c.label, {"prime_condition": c.prime.describe(), "bound": prime_bound})
        return [rep.skip("no admitted prime in range")]
    alist = [0] if c.alpha == "fixed" else sorted(set(alphas))
    runs: list[CheckRun | VerificationReport] = []
    for a in alist:
        for p in ps:
            terms = n_terms if (a == 0 and c.kind == "series-congruence") else family_terms
            runs.append(CheckRun(c, p, a, terms))
    return runs
