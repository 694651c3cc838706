"""Row sums of Q_n, P_n and K, and the two-step semigroup identity."""

from fractions import Fraction

from ..intertwine import IntertwinerKind, chamber_box, jump_total_tail, lambda_support, markov_intertwiner
from ..symfun import odds
from ..systems import (
    CaseId,
    Chamber,
    JumpLaw,
    Window,
    certified_n_step_kernel,
    compose_theorem_kernel,
    reachable_states,
    shape_kernel,
    theorem_kernel,
)
from .common import VerificationCheck, fmt_state, label

# shape-kernel rows are summed over z'_1 <= SHAPE_WINDOW
SHAPE_WINDOW = 12


class RowSumCheck(VerificationCheck):
    name = "rowsums"

    def validate(self) -> None:
        self.check_theorem_rows()
        self.check_shape_rows()
        self.check_intertwiner_rows()
        self.check_semigroup()

    def check_theorem_rows(self) -> None:
        size, n, p, tol = self.params.size, self.params.steps, self.params.p, self.params.tolerance
        start = (0,) * size
        for case in CaseId:
            if case.law is JumpLaw.BERNOULLI:
                states = reachable_states(case, start, n)
                total = sum((theorem_kernel(case, start, s, n, p) for s in states), Fraction(0))
                self.record(label(case, f"sum Q_{n}"), total, 1)
            else:
                kernel = certified_n_step_kernel(case, start, n, p, tol)
                total = sum((theorem_kernel(case, start, s, n, p) for s in kernel.support), Fraction(0))
                self.record(label(case, f"sum Q_{n} over window"), total, 1 - tol, passed=1 - tol <= total <= 1)

    def check_shape_rows(self) -> None:
        size, n, p = self.params.size, self.params.steps, self.params.p
        start = (0,) * size
        for law in JumpLaw:
            if law is JumpLaw.BERNOULLI:
                shapes = chamber_box(0, n, size, Chamber.W)
                total = sum((shape_kernel(law, start, zp, n, p) for zp in shapes), Fraction(0))
                self.record(label("sum P_n", law), total, 1)
            else:
                shapes = chamber_box(0, SHAPE_WINDOW, size, Chamber.W)
                total = sum((shape_kernel(law, start, zp, n, p) for zp in shapes), Fraction(0))
                floor = 1 - jump_total_tail(law, p, n, SHAPE_WINDOW)
                self.record(label("sum P_n", law, f"z'_1 <= {SHAPE_WINDOW}"), total, floor, passed=floor <= total <= 1)

    def check_intertwiner_rows(self) -> None:
        size, p = self.params.size, self.params.p
        for alpha in (tuple(p), odds(p)):
            for kind in IntertwinerKind:
                for z in chamber_box(0, 3, size, Chamber.W):
                    total = sum(
                        (markov_intertwiner(z, y, alpha, kind) for y in lambda_support(z, kind)), Fraction(0)
                    )
                    self.record(label("sum K", kind, fmt_state(z)), total, 1)

    def check_semigroup(self) -> None:
        size, p = self.params.size, self.params.p
        start = (0,) * size
        for case in CaseId:
            for target in reachable_states(case, start, 2, Window(2)):
                self.record(
                    label(case, "Q_2 = Q_1 Q_1", fmt_state(target)),
                    theorem_kernel(case, start, target, 2, p),
                    compose_theorem_kernel(case, start, target, p),
                )
