"""Verification suites: configuration, planning, parallel execution, assembly."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

from .congruences import (DEFAULT_MAX_ORDER, CheckRun, CongruenceCheck, SeriesCache, load_registry,
                          plan_runs)
from .dissections import (g3_uniqueness_scan, residue_avoidance_scan, LEMMA_2_3, verify_2_3_dissection,
                          verify_binomial_congruences, verify_l1_dissection, verify_psi_dissection)
from .named import REGISTRY
from .numtheory import is_prime
from .partitions import (EXHAUSTIVE_LIMIT, H_CONSTRAINT, PartitionConstraint, count_dp, count_exhaustive,
                         overpartition_constraint)
from .report import SuiteResult, VerificationReport, timed
from .series import first_mismatch

# registry-backed suites in the order they appear under "all"
REGISTRY_SUITES = ("intermediates", "congruences", "families", "proof-displays")
SUITES = ("identities", "interpretations", "lemmas") + REGISTRY_SUITES + ("mutation",)

IDENTITY_SERIES = ("g2", "g3", "g4", "h", "t", "m", "r", "s")
PSI_PRIMES = (3, 5, 7, 11, 13)
L1_PRIMES = (5, 7, 11, 13)


@dataclass
class RunConfig:
    N: int = 300
    terms: int = 500
    family_terms: int = 20
    prime_bound: int = 100
    alphas: tuple[int, ...] = (0,)
    primes: str | tuple[int, ...] = "auto"
    suites: tuple[str, ...] = ("all",)
    fmt: str = "text"
    jobs: int = 1
    max_order: int = DEFAULT_MAX_ORDER
    registry: str | None = None
    exhaustive_limit: int = EXHAUSTIVE_LIMIT

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        for name in ("terms", "family_terms", "prime_bound", "jobs", "max_order"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if any(a < 0 for a in self.alphas) or not self.alphas:
            raise ValueError("alphas must be a non-empty list of integers >= 0")
        if self.primes != "auto" and (not self.primes or any(p < 2 for p in self.primes)):
            raise ValueError("primes must be 'auto' or a non-empty list of primes")
        bad = [s for s in self.suites if s != "all" and s not in SUITES]
        if bad:
            raise ValueError(f"unknown suite(s) {bad}; choose from {('all',) + SUITES}")
        if self.fmt not in ("text", "json", "csv"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if not 0 <= self.exhaustive_limit <= EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive_limit must be in 0..{EXHAUSTIVE_LIMIT}")

    def selected(self) -> list[str]:
        if "all" in self.suites:
            return list(SUITES)
        return [s for s in SUITES if s in self.suites]

    def as_dict(self) -> dict:
        d = asdict(self)
        d["alphas"] = list(self.alphas)
        d["primes"] = self.primes if self.primes == "auto" else list(self.primes)
        d["suites"] = self.selected()
        d.pop("fmt")
        d.pop("jobs")  # parallelism does not change results
        return d


Task = Callable[[], VerificationReport]


@dataclass
class Plan:
    """Ordered tasks plus reports settled at planning time (e.g. no admitted prime)."""

    items: list[Task | VerificationReport] = field(default_factory=list)

    def add(self, item: Task | VerificationReport):
        self.items.append(item)


# -- identities ---------------------------------------------------------------

def verify_identity(name: str, order: int) -> VerificationReport:
    ns = REGISTRY[name]
    report = VerificationReport(f"identity:{name}", ns.label, {"N": order})
    with timed(report):
        total = ns.sum_series(order)
        for side, other in (("product", ns.product_series(order)), ("eta", ns.eta_series(order))):
            miss = first_mismatch(total, other)
            if miss:
                return report.fail(f"sum side != {side} side", index=miss[0], lhs=miss[1], rhs=miss[2])
    return report


def _plan_identities(cfg: RunConfig, plan: Plan):
    for name in IDENTITY_SERIES:
        plan.add(lambda name=name: verify_identity(name, cfg.N))


# -- interpretations ----------------------------------------------------------

INTERPRETATIONS: dict[str, tuple[str, str, PartitionConstraint]] = {
    "g2": ("Theorem 3.1 (k=2)", "g2", overpartition_constraint(2)),
    "g3": ("Theorem 3.1 (k=3)", "g3", overpartition_constraint(3)),
    "g4": ("Theorem 3.1 (k=4)", "g4", overpartition_constraint(4)),
    "h": ("Theorem 4.1", "h", H_CONSTRAINT),
}


def verify_interpretation(key: str, n_terms: int, exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> VerificationReport:
    label, series_name, constraint = INTERPRETATIONS[key]
    report = VerificationReport(f"interpretation:{key}", label,
                                {"N_terms": n_terms, "exhaustive_n": exhaustive_limit})
    with timed(report):
        series = REGISTRY[series_name].eta_series(n_terms).tolist()
        dp = count_dp(constraint, n_terms)
        for n, (a, b) in enumerate(zip(dp, series)):
            if a != b:
                return report.fail("DP count != series coefficient", n=n, lhs=a, rhs=b)
        for n in range(min(exhaustive_limit, n_terms) + 1):
            e = count_exhaustive(constraint, n)
            if e != dp[n]:
                return report.fail("exhaustive count != DP count", n=n, lhs=e, rhs=dp[n])
    return report


def _plan_interpretations(cfg: RunConfig, plan: Plan):
    for key in INTERPRETATIONS:
        plan.add(lambda key=key: verify_interpretation(key, cfg.terms, cfg.exhaustive_limit))


# -- lemmas -------------------------------------------------------------------

def _lemma_primes(default: tuple[int, ...], cfg: RunConfig) -> list[int]:
    """The default primes, or the user's list restricted to primes the lemma covers."""
    if cfg.primes == "auto":
        return list(default)
    return [p for p in cfg.primes if is_prime(p) and p >= default[0]]


def _with_tag(fn: Callable[[], VerificationReport], suffix: str) -> Task:
    def task():
        rep = fn()
        rep.check_id += suffix
        return rep
    return task


def _plan_lemmas(cfg: RunConfig, plan: Plan):
    for p in _lemma_primes(PSI_PRIMES, cfg):
        plan.add(lambda p=p: verify_psi_dissection(p, cfg.N))
        plan.add(_with_tag(lambda p=p: verify_psi_dissection(p, cfg.N, use_jtp=True), ":jtp"))
    for p in _lemma_primes(L1_PRIMES, cfg):
        plan.add(lambda p=p: verify_l1_dissection(p, cfg.N))
        plan.add(_with_tag(lambda p=p: verify_l1_dissection(p, cfg.N, use_jtp=True), ":jtp"))
    for label in LEMMA_2_3:
        plan.add(lambda label=label: verify_2_3_dissection(label, cfg.N))
    for k in range(1, 7):
        for m in range(1, 5):
            plan.add(lambda k=k, m=m: verify_binomial_congruences(k, m, cfg.N))
    plan.add(lambda: residue_avoidance_scan(97))
    plan.add(lambda: g3_uniqueness_scan(97))


# -- registry suites ----------------------------------------------------------

def _plan_registry(checks: list[CongruenceCheck], suite: str, cfg: RunConfig, plan: Plan,
                   cache: SeriesCache):
    for c in checks:
        if c.suite != suite:
            continue
        for run in plan_runs(c, cfg.alphas, cfg.primes, cfg.prime_bound, cfg.terms, cfg.family_terms):
            if isinstance(run, VerificationReport):
                plan.add(run)
            else:
                plan.add(lambda run=run: run.run(cache, cfg.max_order))


def mutation_report(run: CheckRun, cache: SeriesCache, max_order: int) -> VerificationReport:
    """Run a strengthened claim; detecting a failure is the passing outcome."""
    inner = run.run(cache, max_order)
    c = run.check
    report = VerificationReport(f"mutate:{run.run_id}", c.label,
                                {**inner.params, "modulus": c.modulus}, elapsed_ms=inner.elapsed_ms)
    if inner.status == "fail":
        report.message = "mutation detected"
        report.params["detected_at"] = inner.first_failure.get("n")
    elif inner.status == "skipped":
        report.skip(inner.message)
    else:
        report.fail("mutation survived: the claim also holds at the doubled modulus",
                    n_checked=run.n_terms, modulus=c.modulus)
    return report


def _plan_mutation(checks: list[CongruenceCheck], cfg: RunConfig, plan: Plan, cache: SeriesCache):
    for c in checks:
        if c.suite != "congruences" or c.modulus is None:
            continue
        m = c.strengthened()
        for run in plan_runs(m, (0,), cfg.primes, cfg.prime_bound, cfg.terms, cfg.family_terms):
            if isinstance(run, VerificationReport):
                plan.add(run)
            else:
                plan.add(lambda run=run: mutation_report(run, cache, cfg.max_order))


# -- execution ----------------------------------------------------------------

def build_plan(suite: str, cfg: RunConfig, checks: list[CongruenceCheck] | None = None,
               cache: SeriesCache | None = None) -> Plan:
    plan = Plan()
    cache = cache or SeriesCache()
    if suite == "identities":
        _plan_identities(cfg, plan)
    elif suite == "interpretations":
        _plan_interpretations(cfg, plan)
    elif suite == "lemmas":
        _plan_lemmas(cfg, plan)
    elif suite in REGISTRY_SUITES:
        _plan_registry(checks if checks is not None else load_registry(cfg.registry), suite, cfg, plan, cache)
    elif suite == "mutation":
        _plan_mutation(checks if checks is not None else load_registry(cfg.registry), cfg, plan, cache)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return plan


def execute(plan: Plan, jobs: int = 1) -> list[VerificationReport]:
    """Run tasks (in parallel when jobs > 1); output order is plan order."""
    tasks = [(i, it) for i, it in enumerate(plan.items) if callable(it)]
    results: dict[int, VerificationReport] = {}
    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for (i, _), rep in zip(tasks, pool.map(lambda t: t[1](), tasks)):
                results[i] = rep
    else:
        for i, task in tasks:
            results[i] = task()
    return [results[i] if callable(it) else it for i, it in enumerate(plan.items)]


def run_suite(suite: str, cfg: RunConfig, checks: list[CongruenceCheck] | None = None,
              cache: SeriesCache | None = None) -> SuiteResult:
    t0 = time.perf_counter()
    reports = execute(build_plan(suite, cfg, checks, cache), cfg.jobs)
    return SuiteResult(suite, reports, (time.perf_counter() - t0) * 1000.0, cfg.as_dict())


def run_config(cfg: RunConfig, checks: list[CongruenceCheck] | None = None) -> SuiteResult:
    """Run every selected suite and merge the reports into one result."""
    t0 = time.perf_counter()
    names = cfg.selected()
    if checks is None and any(s in REGISTRY_SUITES or s == "mutation" for s in names):
        checks = load_registry(cfg.registry)
    cache = SeriesCache()
    reports: list[VerificationReport] = []
    for s in names:
        reports.extend(run_suite(s, cfg, checks, cache).reports)
    name = names[0] if len(names) == 1 else ("all" if "all" in cfg.suites else "+".join(names))
    return SuiteResult(name, reports, (time.perf_counter() - t0) * 1000.0, cfg.as_dict())
