"""Exact q-series arithmetic and a verifier for Rogers-Ramanujan type identities
and their partition congruences modulo powers of 2."""

from .builders import ThetaAtom, eta_series, jacobi_product_series, qpoch, theta_series
from .congruences import CongruenceCheck, RegistryError, load_registry
from .named import REGISTRY as NAMED_SERIES, get_named, named_series
from .numtheory import PrimeCondition, admissible_primes, legendre
from .partitions import PartitionConstraint, count_dp, count_exhaustive
from .qexpr import QExprSyntaxError, eval_qexpr, parse_qexpr
from .report import SuiteResult, VerificationReport, emit_report
from .series import EXACT, Ring, TruncatedSeries, ap_extract, inverse, mul
from .suites import RunConfig, run_config

__version__ = "0.1.0"

__all__ = [
    "EXACT", "NAMED_SERIES", "CongruenceCheck", "PartitionConstraint", "PrimeCondition", "QExprSyntaxError",
    "RegistryError", "Ring", "RunConfig", "SuiteResult", "ThetaAtom", "TruncatedSeries", "VerificationReport",
    "admissible_primes", "ap_extract", "count_dp", "count_exhaustive", "emit_report", "eta_series",
    "eval_qexpr", "get_named", "inverse", "jacobi_product_series", "legendre", "load_registry", "mul",
    "named_series", "parse_qexpr", "qpoch", "run_config", "theta_series",
]
