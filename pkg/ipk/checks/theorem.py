"""Determinantal kernels against the innovation-integrating oracle."""

from fractions import Fraction

from ..systems import CaseId, JumpLaw, certified_n_step_kernel, reachable_states, theorem_kernel
from .common import VerificationCheck, fmt_state, label

# geometric support points lighter than this are not compared
MASS_FLOOR = Fraction(1, 10**10)


class TheoremOracleCheck(VerificationCheck):
    """Q_n from the determinantal formula equals the oracle kernel for every case."""

    name = "theorem-vs-oracle"

    def validate(self) -> None:
        size, n, p = self.params.size, self.params.steps, self.params.p
        start = (0,) * size
        for case in CaseId:
            kernel = certified_n_step_kernel(case, start, n, p, self.params.tolerance)
            if case.law is JumpLaw.BERNOULLI:
                targets = reachable_states(case, start, n)
            else:
                targets = [state for state, mass in kernel.support.items() if mass >= MASS_FLOOR]
            self.log_info(f"case {case}: {len(targets)} states, tail {float(kernel.tail_bound):.2e}")

            smallest = Fraction(1)
            for target in targets:
                value = theorem_kernel(case, start, target, n, p)
                smallest = min(smallest, value)
                self.record_within(
                    label(case, f"Q_{n}", fmt_state(start), "->", fmt_state(target)),
                    value,
                    kernel[target],
                    kernel.tail_bound,
                )
            self.record(label(case, "smallest Q value is nonnegative"), smallest, 0, passed=smallest >= 0)
