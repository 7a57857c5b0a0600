"""Acceptance criteria, one test each, exact arithmetic throughout.

Each test prints a single ``criterion k: PASS|FAIL ...`` line.  Run directly
(``python tests/test_acceptance.py``) to get just those lines.
"""

import random
import time

import pytest

from qcongruences.partitions import PartitionConstraint, count_dp, count_exhaustive
from qcongruences.suites import IDENTITY_SERIES, RunConfig, run_config

# criterion number -> (name, expected runtime in seconds)
CRITERIA = {
    1: ("identity suite, N=200", 10),
    2: ("interpretation suite, n<=500 / exhaustive n<=30", 30),
    3: ("lemma suite, N=300, scans p<=97", 60),
    4: ("intermediate-step suite, N=300", 60),
    5: ("congruence families at alpha=0, n<=500, smallest admitted prime", 120),
    6: ("j-family spot checks, alpha=0, n<=20", 300),
    7: ("mutation sanity: every doubled modulus is caught within n<=500", 30),
    8: ("oracle independence: 100 random constraints, n<=25", None),
}

RESULTS: dict[int, str] = {}


def _line(k: int, ok: bool, detail: str, elapsed: float) -> str:
    name, budget = CRITERIA[k]
    over = f" (over the expected {budget}s)" if budget and elapsed > budget else ""
    return f"criterion {k}: {'PASS' if ok else 'FAIL'}  {name}  [{detail}; {elapsed:.1f}s{over}]"


def _report(k, ok, detail, elapsed, capsys=None):
    line = _line(k, ok, detail, elapsed)
    RESULTS[k] = line
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def _suite(k, cfg, capsys=None):
    t0 = time.perf_counter()
    result = run_config(cfg)
    s = result.summary
    detail = f"{s['pass']} pass, {s['fail']} fail, {s['skip']} skip"
    if result.failures():
        detail += "; failing: " + ", ".join(r.check_id for r in result.failures())
    ok = s["fail"] == 0 and s["skip"] == 0 and s["pass"] > 0
    return _report(k, ok, detail, time.perf_counter() - t0, capsys), result


def criterion_1(capsys=None):
    ok, result = _suite(1, RunConfig(suites=("identities",), N=200), capsys)
    return ok and [r.check_id for r in result.reports] == [f"identity:{n}" for n in IDENTITY_SERIES]


def criterion_2(capsys=None):
    return _suite(2, RunConfig(suites=("interpretations",), terms=500, exhaustive_limit=30), capsys)[0]


def criterion_3(capsys=None):
    return _suite(3, RunConfig(suites=("lemmas",), N=300), capsys)[0]


def criterion_4(capsys=None):
    return _suite(4, RunConfig(suites=("intermediates",), N=300, terms=300), capsys)[0]


def criterion_5(capsys=None):
    return _suite(5, RunConfig(suites=("congruences",), alphas=(0,), terms=500, primes="auto"), capsys)[0]


def criterion_6(capsys=None):
    return _suite(6, RunConfig(suites=("families",), alphas=(0,), family_terms=20, primes="auto"), capsys)[0]


def criterion_7(capsys=None):
    return _suite(7, RunConfig(suites=("mutation",), terms=500, primes="auto"), capsys)[0]


def criterion_8(capsys=None, seed=20240611, n_max=25):
    t0 = time.perf_counter()
    rng = random.Random(seed)
    bad = []
    for _ in range(100):
        m = rng.randint(1, 10)
        colours = [rng.randint(0, 3) for _ in range(m)]
        if not any(colours):
            colours[rng.randrange(m)] = 1
        c = PartitionConstraint(m, tuple(colours), rng.random() < 0.5)
        dp = count_dp(c, n_max)
        bad += [(c, n) for n in range(n_max + 1) if count_exhaustive(c, n) != dp[n]]
    detail = f"100 constraints x n=0..{n_max}, {len(bad)} disagreements"
    return _report(8, not bad, detail, time.perf_counter() - t0, capsys)


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    assert globals()[f"criterion_{k}"](capsys), RESULTS.get(k)


if __name__ == "__main__":
    for k in sorted(CRITERIA):
        globals()[f"criterion_{k}"]()
