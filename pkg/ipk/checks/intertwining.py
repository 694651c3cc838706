"""P_n K = K Q_n, stochastic and unnormalised."""

from ..intertwine import IntertwinerKind, chamber_box, core_intertwining_check, intertwining_check
from ..systems import CaseId, Chamber, JumpLaw
from .common import VerificationCheck, fmt_state, label


class IntertwiningCheck(VerificationCheck):
    name = "intertwining"

    def validate(self) -> None:
        size, n, p, tol = self.params.size, self.params.steps, self.params.p, self.params.tolerance
        shapes = chamber_box(0, 1, size, Chamber.W)
        for case in CaseId:
            kind = IntertwinerKind.for_case(case)
            edges = chamber_box(0, 1 + n, size, kind.chamber)
            self.log_info(f"case {case}: {len(shapes)} shapes x {len(edges)} edges")
            for z in shapes:
                for y in edges:
                    result = intertwining_check(case, z, y, n, p, tolerance=tol)
                    self.record_within(
                        label(case, "P K = K Q", fmt_state(z), fmt_state(y)),
                        result.lhs,
                        result.rhs,
                        result.tail_bound,
                    )
                    if case.law is JumpLaw.BERNOULLI:
                        lhs, rhs = core_intertwining_check(case, z, y, n, p)
                        self.record(label(case, "P Lambda = Lambda Q (core)", fmt_state(z), fmt_state(y)), lhs, rhs)
