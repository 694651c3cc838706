"""Insertion correspondences: injectivity, pushforward laws and the edge coupling."""

from collections import defaultdict
from fractions import Fraction

from ..intertwine import IntertwinerKind, markov_intertwiner
from ..rsk import Correspondence, CorrespondenceResult, correspond, coupling_path, edge_vector, enumerate_grids, in_range
from ..rsk import joint_law, shape_path_law
from ..systems import InnovationGrid, JumpLaw, innovation_probability, shape_kernel
from .common import VerificationCheck, fmt_state, label

# geometric grids use entries up to this bound; laws are compared on totals up to it
GEOMETRIC_TOTAL = 2

ShapePath = tuple[tuple[int, ...], ...]


class BijectionCheck(VerificationCheck):
    name = "bijection"

    def validate(self) -> None:
        paths: dict[Correspondence, dict[ShapePath, Fraction]] = {}
        for variant in Correspondence:
            grids = self.grids(variant.law)
            runs = [(grid, correspond(variant, grid)) for grid in grids]
            self.log_info(f"{variant}: {len(runs)} grids")
            self.check_injective(variant, runs)
            self.check_coupling(variant, grids)
            lawful = [(grid, result) for grid, result in runs if self.complete_total(grid)]
            self.check_joint_law(variant, lawful)
            paths[variant] = self.check_shape_law(variant, lawful)
            self.check_edge_law(variant, lawful)

        for first, second in ((Correspondence.RSK, Correspondence.BURGE),
                              (Correspondence.DUAL_RSK, Correspondence.DUAL_BURGE)):
            keys = set(paths[first]) | set(paths[second])
            mismatches = sum(1 for key in keys if paths[first].get(key, 0) != paths[second].get(key, 0))
            self.record(label(first, "vs", second, "shape path law mismatches"), mismatches, 0)

    def grids(self, law: JumpLaw) -> list[InnovationGrid]:
        size, n = self.params.size, self.params.steps
        return list(enumerate_grids(size, n, law, max_entry=GEOMETRIC_TOTAL))

    @staticmethod
    def complete_total(grid: InnovationGrid) -> bool:
        """Whether every grid with this grid's total is in the enumeration."""
        return grid.law is JumpLaw.BERNOULLI or sum(map(sum, grid.xi)) <= GEOMETRIC_TOTAL

    def check_injective(self, variant: Correspondence, runs: list[tuple[InnovationGrid, CorrespondenceResult]]) -> None:
        pairs = {(result.P.rows, result.shapes) for _, result in runs}
        self.record(label(variant, "distinct (P, Q) pairs"), len(pairs), len(runs))
        inside = sum(1 for _, result in runs if in_range(variant, result.P, result.shapes))
        self.record(label(variant, "pairs in range"), inside, len(runs))

    def check_coupling(self, variant: Correspondence, grids: list[InnovationGrid]) -> None:
        mismatches = sum(1 for grid in grids if not coupling_path(variant, grid)[2])
        self.record(label(variant, variant.edge, "vs case", variant.case, "coupling mismatches"), mismatches, 0)

    def check_joint_law(self, variant: Correspondence, runs: list[tuple[InnovationGrid, CorrespondenceResult]]) -> None:
        n, p = self.params.steps, self.params.p
        mismatches = sum(
            1
            for grid, result in runs
            if innovation_probability(variant.law, grid, p) != joint_law(variant, result.P, result.shapes, n, p)
        )
        self.record(label(variant, "joint law mismatches"), mismatches, 0)

    def check_shape_law(
        self, variant: Correspondence, runs: list[tuple[InnovationGrid, CorrespondenceResult]]
    ) -> dict[ShapePath, Fraction]:
        n, p = self.params.steps, self.params.p
        full: dict[ShapePath, Fraction] = defaultdict(Fraction)
        final: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
        for grid, result in runs:
            mass = innovation_probability(variant.law, grid, p)
            full[result.shapes] += mass
            final[result.shapes[-1]] += mass

        start = (0,) * self.params.size
        for shape, mass in final.items():
            self.record(label(variant, "P(Z(n) =", fmt_state(shape), ")"), mass, shape_kernel(variant.law, start, shape, n, p))
        mismatches = sum(
            1 for path, mass in full.items() if mass != shape_path_law(variant, path, path[-1], n, p)
        )
        self.record(label(variant, "shape path law mismatches"), mismatches, 0)
        return dict(full)

    def check_edge_law(self, variant: Correspondence, runs: list[tuple[InnovationGrid, CorrespondenceResult]]) -> None:
        """Given the final shape z, the edge of P is distributed as K(z, .)."""
        size, p = self.params.size, self.params.p
        kind = IntertwinerKind.for_case(variant.case)
        alpha = variant.case.intertwiner_weights(p)
        by_shape: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
        by_edge: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = defaultdict(Fraction)
        for grid, result in runs:
            mass = innovation_probability(variant.law, grid, p)
            shape = result.shapes[-1]
            edge = edge_vector(result.P, variant.edge, size).values
            by_shape[shape] += mass
            by_edge[(shape, edge)] += mass

        mismatches = sum(
            1
            for (shape, edge), mass in by_edge.items()
            if mass / by_shape[shape] != markov_intertwiner(shape, edge, alpha, kind)
        )
        self.record(label(variant, "conditional edge law mismatches"), mismatches, 0)
