"""Lambda by pattern enumeration, by determinant and by non-intersecting paths."""

from fractions import Fraction

from ..intertwine import (
    IntertwinerKind,
    IntertwinerMethod,
    LambdaMethod,
    chamber_box,
    enumerate_gt,
    lambda_kernel,
    lambda_support,
    markov_intertwiner,
    pattern_weight,
)
from ..symfun import inverse_weights
from ..systems import Chamber
from .common import VerificationCheck, fmt_state, label, random_weights

PARTS = (-2, 4)
SHIFTS = range(-2, 3)


class LambdaThreeWayCheck(VerificationCheck):
    name = "lambda-threeway"

    def validate(self) -> None:
        rng = self.rng()
        shapes = chamber_box(*PARTS, self.params.size, Chamber.W)
        for trial in range(self.params.trials):
            alpha = random_weights(rng, self.params.size)
            for kind in IntertwinerKind:
                self.check_methods(shapes, alpha, kind, trial)
                self.check_intertwiner(shapes, alpha, kind, trial)
            self.check_hat(shapes, alpha, trial)

    def check_methods(
        self, shapes: list[tuple[int, ...]], alpha: tuple[Fraction, ...], kind: IntertwinerKind, trial: int
    ) -> None:
        for z in shapes:
            for y in lambda_support(z, kind):
                by_det = lambda_kernel(z, y, alpha, kind, LambdaMethod.DET)
                name = label(kind, fmt_state(z), fmt_state(y), f"trial {trial}")
                self.record(label("enum = det", name), lambda_kernel(z, y, alpha, kind, LambdaMethod.ENUM), by_det)
                self.record(label("paths = det", name), lambda_kernel(z, y, alpha, kind, LambdaMethod.GV), by_det)
            for y in lambda_support(z, kind)[:3]:
                base = lambda_kernel(z, y, alpha, kind)
                for c in SHIFTS:
                    moved = lambda_kernel(tuple(v + c for v in z), tuple(v + c for v in y), alpha, kind)
                    self.record(label("translation", kind, fmt_state(z), fmt_state(y), f"c={c}"), moved, base)

    def check_intertwiner(
        self, shapes: list[tuple[int, ...]], alpha: tuple[Fraction, ...], kind: IntertwinerKind, trial: int
    ) -> None:
        for z in shapes:
            if z[-1] < 0:
                continue
            for y in lambda_support(z, kind):
                self.record(
                    label("K tableau sum = alpha^y Lambda / s_z", kind, fmt_state(z), fmt_state(y), f"trial {trial}"),
                    markov_intertwiner(z, y, alpha, kind, IntertwinerMethod.TABLEAU),
                    markov_intertwiner(z, y, alpha, kind, IntertwinerMethod.LAMBDA),
                )

    def check_hat(self, shapes: list[tuple[int, ...]], alpha: tuple[Fraction, ...], trial: int) -> None:
        beta = inverse_weights(alpha)
        mismatches = 0
        total = 0
        for z in shapes:
            for x in enumerate_gt(z):
                total += 1
                if pattern_weight(x.hat(), alpha) != pattern_weight(x, beta):
                    mismatches += 1
        self.log_info(f"hat involution compared on {total} patterns")
        self.record(label("alpha^(x hat) = beta^x mismatches", f"trial {trial}"), mismatches, 0)
