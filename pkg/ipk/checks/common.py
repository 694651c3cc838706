import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import ClassVar

import numpy as np

from ..exactnum import format_rational
from ..systems import seed_sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    """One identity: both sides and whether they agree."""

    name: str
    lhs: Fraction
    rhs: Fraction
    passed: bool

    def as_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "pass": self.passed,
        }


@dataclass(frozen=True)
class SuiteParams:
    size: int
    steps: int
    p: tuple[Fraction, ...]
    seed: int = 0
    tolerance: Fraction = Fraction(1, 10**12)
    trials: int = 3


@dataclass
class VerificationCheck:
    """Base class for a verification suite.

    Subclasses implement ``validate`` and report every identity through
    ``record``; a failing identity is logged through ``log_error``.
    """

    name: ClassVar[str] = ""

    params: SuiteParams
    results: list[CheckResult] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    def validate(self) -> None:
        raise NotImplementedError

    @property
    def passed(self) -> bool:
        return not self.errors

    def record(self, name: str, lhs: Fraction | int, rhs: Fraction | int, passed: bool | None = None) -> bool:
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        ok = lhs == rhs if passed is None else passed
        self.results.append(CheckResult(name=name, lhs=lhs, rhs=rhs, passed=ok))
        if not ok:
            self.log_error(message=f"{name}: {format_rational(lhs)} != {format_rational(rhs)}")
        return ok

    def record_within(self, name: str, lhs: Fraction, rhs: Fraction, bound: Fraction) -> bool:
        """Pass when |lhs - rhs| <= bound."""
        return self.record(name, lhs, rhs, passed=abs(Fraction(lhs) - Fraction(rhs)) <= bound)

    def log_error(self, message: str) -> None:
        self.errors.append(message)
        logger.error(f"[{self.name}] {message}")

    def log_info(self, message: str) -> None:
        logger.info(f"[{self.name}] {message}")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(seed_sequence(self.params.seed))


def random_weights(rng: np.random.Generator, size: int, below_one: bool = False) -> tuple[Fraction, ...]:
    """Random positive rationals with small numerators and denominators."""
    weights = []
    for _ in range(size):
        numerator = int(rng.integers(1, 8))
        denominator = int(rng.integers(1, 8))
        if below_one:
            denominator += numerator
        weights.append(Fraction(numerator, denominator))
    return tuple(weights)


def label(*parts: object) -> str:
    return " ".join(str(part) for part in parts)


def fmt_state(values: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"
