"""p-dissections of psi and l1, the 2-/3-dissection identities, and binomial congruences."""

from __future__ import annotations

from dataclasses import dataclass, field

from .builders import ThetaAtom, eta_series, jacobi_product_series, theta_series
from .numtheory import is_prime, legendre, primes_up_to
from .qexpr import eval_qexpr
from .report import VerificationReport, timed
from .series import EXACT, Ring, TruncatedSeries, ap_extract, first_mismatch, shift, substitute_power


@dataclass(frozen=True)
class DissectionTerm:
    """sign * q^prefix * theta(atom), or sign * q^prefix * tail when atom is None."""

    sign: int
    prefix: int
    atom: ThetaAtom | None
    t: int | None = None


@dataclass
class DissectionWitness:
    p: int
    head: list[DissectionTerm] = field(default_factory=list)
    tail: DissectionTerm | None = None

    def component_map(self) -> dict[int, list[DissectionTerm]]:
        comp: dict[int, list[DissectionTerm]] = {}
        for term in self.head + ([self.tail] if self.tail else []):
            comp.setdefault(term.prefix % self.p, []).append(term)
        return comp


def pm_index(p: int) -> int:
    """(+-p - 1)/6: (p-1)/6 if p = 1 (mod 6), else (-p-1)/6."""
    if p % 6 == 1:
        return (p - 1) // 6
    if p % 6 == 5:
        return (-p - 1) // 6
    raise ValueError(f"{p} is not congruent to +-1 mod 6")


def _halve(x: int, what: str) -> int:
    if x % 2:
        raise ValueError(f"non-integral exponent {x}/2 in {what}")
    return x // 2


def psi_witness(p: int) -> DissectionWitness:
    w = DissectionWitness(p)
    for t in range((p - 3) // 2 + 1):
        a = _halve(p * p + (2 * t + 1) * p, "psi dissection")
        b = _halve(p * p - (2 * t + 1) * p, "psi dissection")
        w.head.append(DissectionTerm(1, (t * t + t) // 2, ThetaAtom.general(1, a, 1, b), t))
    w.tail = DissectionTerm(1, (p * p - 1) // 8, None)
    return w


def l1_witness(p: int) -> DissectionWitness:
    w = DissectionWitness(p)
    skip = pm_index(p)
    half = (p - 1) // 2
    for t in range(-half, half + 1):
        if t == skip:
            continue
        a = _halve(3 * p * p + (6 * t + 1) * p, "l1 dissection")
        b = _halve(3 * p * p - (6 * t + 1) * p, "l1 dissection")
        w.head.append(DissectionTerm((-1) ** (t % 2), (3 * t * t + t) // 2,
                                     ThetaAtom.general(-1, a, -1, b), t))
    w.tail = DissectionTerm((-1) ** (skip % 2), (p * p - 1) // 24, None)
    return w


def _term_series(term: DissectionTerm, tail: TruncatedSeries, order: int, ring: Ring,
                 use_jtp: bool = False) -> TruncatedSeries:
    if term.atom is None:
        body = tail
    elif use_jtp:
        body = jacobi_product_series(term.atom, order, ring)
    else:
        body = theta_series(term.atom, order, ring)
    return term.sign * shift(body, term.prefix) if term.prefix <= order else TruncatedSeries.zero(order, ring)


def _check_dissection(report: VerificationReport, target: TruncatedSeries, witness: DissectionWitness,
                      tail: TruncatedSeries, use_jtp: bool) -> VerificationReport:
    order, ring, p = target.order, target.ring, witness.p
    parts = {}
    total = TruncatedSeries.zero(order, ring)
    for term in witness.head + [witness.tail]:
        s = _term_series(term, tail, order, ring, use_jtp)
        parts[id(term)] = s
        total = total + s
    miss = first_mismatch(target, total)
    if miss:
        return report.fail("dissection sum differs from the series", index=miss[0], lhs=miss[1], rhs=miss[2])
    # every head term lives on the progression of its prefix residue
    for term in witness.head:
        s = parts[id(term)]
        for e, _c in s.nonzero_terms():
            if e % p != term.prefix % p:
                return report.fail("head term leaves its residue class", t=term.t, index=e,
                                   residue=e % p, expected=term.prefix % p)
    # per residue: the extracted component equals the grouped terms
    for r, terms in sorted(witness.component_map().items()):
        if r > order:
            continue
        grouped = TruncatedSeries.zero(order, ring)
        for term in terms:
            grouped = grouped + parts[id(term)]
        miss = first_mismatch(ap_extract(target, p, r), ap_extract(grouped, p, r))
        if miss:
            return report.fail("residue component mismatch", residue=r, index=miss[0], lhs=miss[1], rhs=miss[2])
    return report


def psi_residue_claim(p: int) -> tuple[bool, dict]:
    tail = (p * p - 1) // 8 % p
    heads = {(t * t + t) // 2 % p for t in range((p - 3) // 2 + 1)}
    return tail not in heads, {"tail_residue": tail, "head_residues": sorted(heads)}


def l1_residue_claim(p: int) -> tuple[bool, dict]:
    tail = (p * p - 1) // 24 % p
    skip = pm_index(p)
    half = (p - 1) // 2
    heads = {(3 * t * t + t) // 2 % p for t in range(-half, half + 1) if t != skip}
    return tail not in heads, {"tail_residue": tail, "head_residues": sorted(heads)}


def verify_psi_dissection(p: int, order: int = 300, ring: Ring = EXACT,
                          use_jtp: bool = False) -> VerificationReport:
    if p == 2 or not is_prime(p):
        raise ValueError(f"psi dissection needs an odd prime, got {p}")
    report = VerificationReport(f"lemma2.1[p={p}]", "Lemma 2.1 (eq7)", {"p": p, "N": order})
    with timed(report):
        if order < (p * p - 1) // 8:
            return report.skip(f"order {order} is below the tail exponent")
        ok, info = psi_residue_claim(p)
        if not ok:
            return report.fail("tail residue collides with a head residue", **info)
        target = theta_series(ThetaAtom.psi(1), order, ring)
        tail = theta_series(ThetaAtom.psi(p * p), order, ring)
        _check_dissection(report, target, psi_witness(p), tail, use_jtp)
    return report


def verify_l1_dissection(p: int, order: int = 300, ring: Ring = EXACT,
                         use_jtp: bool = False) -> VerificationReport:
    if p < 5 or not is_prime(p):
        raise ValueError(f"l1 dissection needs a prime p >= 5, got {p}")
    report = VerificationReport(f"lemma2.2[p={p}]", "Lemma 2.2 (eq8)",
                                {"p": p, "N": order, "branch": pm_index(p)})
    with timed(report):
        if order < (p * p - 1) // 24:
            return report.skip(f"order {order} is below the tail exponent")
        ok, info = l1_residue_claim(p)
        if not ok:
            return report.fail("tail residue collides with a head residue", **info)
        target = eta_series(1, order, ring)
        tail = eta_series(p * p, order, ring)
        _check_dissection(report, target, l1_witness(p), tail, use_jtp)
    return report


LEMMA_2_3 = {
    "eq12": ("l3^3/l1", "l4^3*l6^2/(l2^2*l12)+q^1*l12^3/l4"),
    "eq14": ("l2^2/l1", "l6*l9^2/(l3*l18)+q^1*l18^2/l9"),
    "c18": ("l2/l1^2", "l6^4*l9^6/(l3^8*l18^3)+2*q^1*l6^3*l9^3/l3^7+4*q^2*l6^2*l18^3/l3^6"),
}


def verify_2_3_dissection(label: str, order: int = 300, ring: Ring = EXACT) -> VerificationReport:
    lhs, rhs = LEMMA_2_3[label]
    report = VerificationReport(f"lemma2.3[{label}]", f"Lemma 2.3 ({label})", {"N": order})
    with timed(report):
        miss = first_mismatch(eval_qexpr(lhs, order, ring), eval_qexpr(rhs, order, ring))
        if miss:
            report.fail(f"{lhs} != {rhs}", index=miss[0], lhs=miss[1], rhs=miss[2])
    return report


def verify_2_3_dissections(order: int = 300, ring: Ring = EXACT) -> list[VerificationReport]:
    return [verify_2_3_dissection(label, order, ring) for label in LEMMA_2_3]


def verify_binomial_congruences(k: int, m: int, order: int = 200) -> VerificationReport:
    """l_{2k}^m = l_k^{2m} (mod 2) and l_{2k}^{2m} = l_k^{4m} (mod 4)."""
    report = VerificationReport(f"binomial[k={k},m={m}]", "(lm1)-(lm2)", {"k": k, "m": m, "N": order})
    with timed(report):
        lk, l2k = eta_series(k, order), eta_series(2 * k, order)
        for bits, (a, b) in ((1, (l2k ** m, lk ** (2 * m))), (2, (l2k ** (2 * m), lk ** (4 * m)))):
            miss = first_mismatch(a, b, bits)
            if miss:
                return report.fail(f"fails mod {1 << bits}", modulus=1 << bits,
                                   index=miss[0], lhs=miss[1], rhs=miss[2])
    return report


def residue_avoidance_scan(bound: int = 97) -> VerificationReport:
    """The residue-avoidance claims of both p-dissections for every admissible p <= bound."""
    report = VerificationReport(f"residue-avoidance[p<={bound}]", "Lemmas 2.1-2.2", {"bound": bound})
    with timed(report):
        for p in primes_up_to(bound):
            if p == 2:
                continue
            ok, info = psi_residue_claim(p)
            if not ok:
                return report.fail("Lemma 2.1 residue collision", p=p, **info)
            if p >= 5:
                ok, info = l1_residue_claim(p)
                if not ok:
                    return report.fail("Lemma 2.2 residue collision", p=p, **info)
    return report


def g3_solutions(p: int) -> list[tuple[int, int]]:
    """(t, m) in [-(p-1)/2, (p-1)/2]^2 with (6t+1)^2 + 8(6m+1)^2 = 0 (mod p)."""
    half = (p - 1) // 2
    rng = range(-half, half + 1)
    return [(t, m) for t in rng for m in rng if ((6 * t + 1) ** 2 + 8 * (6 * m + 1) ** 2) % p == 0]


def g3_uniqueness_scan(bound: int = 97) -> VerificationReport:
    report = VerificationReport(f"g3-uniqueness[p<={bound}]", "(g3)", {"bound": bound})
    with timed(report):
        checked = []
        for p in primes_up_to(bound):
            if p < 5 or legendre(-8, p) != -1:
                continue
            sols = g3_solutions(p)
            expected = [(pm_index(p), pm_index(p))]
            if sols != expected:
                return report.fail("unexpected solutions", p=p, solutions=sols, expected=expected)
            checked.append(p)
        report.params["primes"] = checked
    return report
