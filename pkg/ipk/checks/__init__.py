import logging

from .bijection import BijectionCheck
from .common import CheckResult, SuiteParams, VerificationCheck
from .intertwining import IntertwiningCheck
from .inverse import InverseCheck
from .lambda_threeway import LambdaThreeWayCheck
from .rowsums import RowSumCheck
from .symfun_identities import SymfunIdentityCheck
from .theorem import TheoremOracleCheck

logger = logging.getLogger(__name__)

SUITES: dict[str, type[VerificationCheck]] = {
    check.name: check
    for check in (
        TheoremOracleCheck,
        IntertwiningCheck,
        InverseCheck,
        BijectionCheck,
        RowSumCheck,
        SymfunIdentityCheck,
        LambdaThreeWayCheck,
    )
}


def run_suite(name: str, params: SuiteParams) -> VerificationCheck:
    """Instantiate the named suite and run it to completion."""
    try:
        suite_class = SUITES[name]
    except KeyError as exc:
        raise KeyError(f"Unknown suite {name!r}; choose from {', '.join(SUITES)}") from exc
    suite = suite_class(params=params)
    logger.info(f"Running {name} at N={params.size}, n={params.steps}")
    suite.validate()
    logger.info(f"{name}: {len(suite.results)} checks, {len(suite.errors)} failures")
    return suite


__all__ = [
    "SUITES",
    "BijectionCheck",
    "CheckResult",
    "IntertwiningCheck",
    "InverseCheck",
    "LambdaThreeWayCheck",
    "RowSumCheck",
    "SuiteParams",
    "SymfunIdentityCheck",
    "TheoremOracleCheck",
    "VerificationCheck",
    "run_suite",
]
