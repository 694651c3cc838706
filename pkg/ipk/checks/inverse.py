"""Pi is a two-sided inverse of Lambda on state boxes."""

from fractions import Fraction

from ..intertwine import IntertwinerKind, inverse_check, m_matrix_det
from .common import VerificationCheck, label, random_weights

BOX = (0, 5)

# m-matrix determinants are compared on this many (y, y') pairs per trial
M_PAIRS = 25


class InverseCheck(VerificationCheck):
    name = "inverse"

    def validate(self) -> None:
        size = self.params.size
        rng = self.rng()
        for trial in range(self.params.trials):
            alpha = random_weights(rng, size)
            for kind in IntertwinerKind:
                pi_lambda, lambda_pi = inverse_check(size, alpha, BOX, kind)
                self.check_identity(label(kind, "Pi Lambda", f"trial {trial}"), pi_lambda)
                self.check_identity(label(kind, "Lambda Pi", f"trial {trial}"), lambda_pi)
                if kind is IntertwinerKind.LEFT:
                    for (y, yp), value in list(pi_lambda.items())[:M_PAIRS]:
                        self.record(label("m-matrix", y, yp, f"trial {trial}"), m_matrix_det(y, yp, alpha), value)

    def check_identity(self, name: str, entries: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction]) -> None:
        diagonal = [value for (a, b), value in entries.items() if a == b]
        off = [abs(value) for (a, b), value in entries.items() if a != b]
        self.record(label(name, "unit diagonal entries"), sum(1 for v in diagonal if v == 1), len(diagonal))
        self.record(label(name, "largest off-diagonal entry"), max(off, default=Fraction(0)), 0)
