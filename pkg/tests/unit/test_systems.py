"""Unit tests for the particle systems and their kernels."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ipk.exactnum import binomial
from ipk.exceptions import ChamberError, DimensionError, DomainError, SupportError, WindowError
from ipk.systems import (
    CaseId,
    Chamber,
    Edge,
    InnovationGrid,
    JumpLaw,
    OrderedState,
    Window,
    certified_n_step_kernel,
    compose_theorem_kernel,
    innovation_probability,
    mc_estimate,
    n_step_kernel,
    one_step_kernel,
    prefactor,
    reachable_states,
    run_grid,
    sample_path,
    shape_kernel,
    step_case,
    theorem_core,
    theorem_kernel,
)

from strategies import probabilities

HALF = Fraction(1, 2)


class TestCaseTable:
    """Test the derived attributes of each case."""

    def test_chambers_and_edges(self) -> None:
        assert [c.chamber for c in CaseId] == [Chamber.W_HAT, Chamber.W, Chamber.W, Chamber.W_HAT]
        assert [c.edge for c in CaseId] == [Edge.REDGE, Edge.LEDGE, Edge.LEDGE, Edge.REDGE]
        assert [c.law for c in CaseId] == [JumpLaw.GEOMETRIC, JumpLaw.BERNOULLI, JumpLaw.GEOMETRIC, JumpLaw.BERNOULLI]

    def test_theorem_weights(self) -> None:
        p = (Fraction(1, 3), Fraction(1, 4))
        assert CaseId.A.theorem_weights(p) == (3, 4)
        assert CaseId.B.theorem_weights(p) == (Fraction(1, 2), Fraction(1, 3))
        assert CaseId.C.theorem_weights(p) == p
        assert CaseId.D.theorem_weights(p) == (2, 3)
        assert CaseId.D.prefactor_base(p) == (Fraction(1, 2), Fraction(1, 3))


class TestStates:
    """Test state and grid validation."""

    def test_chamber_violation(self) -> None:
        with pytest.raises(ChamberError) as exc:
            OrderedState((0, 1), Chamber.W)
        assert exc.value.values == (0, 1)
        assert OrderedState((0, 1), Chamber.W_HAT).values == (0, 1)

    def test_bernoulli_support(self) -> None:
        with pytest.raises(SupportError):
            InnovationGrid(((0, 2),), JumpLaw.BERNOULLI)
        assert InnovationGrid(((0, 2),), JumpLaw.GEOMETRIC).steps == 2

    def test_ragged_grid(self) -> None:
        with pytest.raises(DimensionError):
            InnovationGrid(((0, 1), (1,)), JumpLaw.BERNOULLI)

    def test_probabilities_in_unit_interval(self) -> None:
        with pytest.raises(DomainError):
            theorem_kernel(CaseId.B, (0,), (0,), 1, (Fraction(1),))


class TestRecursions:
    """Test one step of each recursion."""

    @pytest.mark.parametrize(
        "case,y,xi,expected",
        [
            (CaseId.A, (0, 0), (1, 1), (1, 2)),
            (CaseId.B, (1, 0), (0, 1), (1, 1)),
            (CaseId.C, (1, 0), (0, 5), (1, 1)),
            (CaseId.D, (0, 0), (1, 0), (1, 1)),
        ],
    )
    def test_examples(self, case: CaseId, y: tuple[int, ...], xi: tuple[int, ...], expected: tuple[int, ...]) -> None:
        assert step_case(case, y, xi).values == expected

    def test_case_c_reads_old_neighbour(self) -> None:
        """Test case C clamps at the neighbour's position before the step."""
        assert step_case(CaseId.C, (0, 0), (3, 3)).values == (3, 0)
        assert step_case(CaseId.B, (0, 0), (1, 1)).values == (1, 1)

    @settings(max_examples=200)
    @given(
        st.sampled_from(list(CaseId)),
        st.lists(st.integers(0, 6), min_size=3, max_size=3),
        st.lists(st.integers(0, 3), min_size=3, max_size=3),
    )
    def test_chamber_preserved(self, case: CaseId, start: list[int], xi: list[int]) -> None:
        y = sorted(start, reverse=case.chamber is Chamber.W)
        if case.law is JumpLaw.BERNOULLI:
            xi = [min(v, 1) for v in xi]
        after = step_case(case, y, xi)
        assert case.chamber.contains(after.values)

    def test_run_grid_law_mismatch(self) -> None:
        grid = InnovationGrid(((1,),), JumpLaw.GEOMETRIC)
        with pytest.raises(SupportError):
            run_grid(CaseId.B, grid)
        assert [y.values for y in run_grid(CaseId.A, grid)] == [(0,), (1,)]


class TestSampling:
    """Test path sampling and Monte Carlo."""

    def test_zero_steps(self) -> None:
        assert [y.values for y in sample_path(CaseId.B, (2, 1), 0, (HALF, HALF), seed=3)] == [(2, 1)]

    def test_deterministic_in_seed(self) -> None:
        first = sample_path(CaseId.A, (0, 0), 50, (HALF, Fraction(1, 3)), seed=11)
        second = sample_path(CaseId.A, (0, 0), 50, (HALF, Fraction(1, 3)), seed=11)
        assert first == second
        assert all(y.chamber is Chamber.W_HAT for y in first)

    def test_long_path_stays_ordered(self) -> None:
        path = sample_path(CaseId.A, (0, 0), 10_000, (HALF, HALF), seed=5)
        assert Chamber.W_HAT.contains(path[-1].values)

    def test_mc_independent_of_threads(self) -> None:
        one = mc_estimate(CaseId.B, (0, 0), (1, 1), 1, (HALF, HALF), reps=3000, seed=9, threads=1)
        four = mc_estimate(CaseId.B, (0, 0), (1, 1), 1, (HALF, HALF), reps=3000, seed=9, threads=4)
        assert one == four
        assert abs(one.estimate - Fraction(1, 4)) <= 4 * one.stderr_bound

    def test_mc_needs_replicas(self) -> None:
        with pytest.raises(DomainError):
            mc_estimate(CaseId.B, (0, 0), (1, 1), 1, (HALF, HALF), reps=0, seed=0)

    @pytest.mark.slow
    @pytest.mark.parametrize("case", list(CaseId))
    def test_mc_matches_kernel(self, case: CaseId) -> None:
        p = (HALF, HALF)
        start = (0, 0)
        for target in reachable_states(case, start, 2, Window(2))[:3]:
            exact = theorem_kernel(case, start, target, 2, p)
            estimate = mc_estimate(case, start, target, 2, p, reps=100_000, seed=1, threads=1)
            assert abs(estimate.estimate - exact) <= 4 * estimate.stderr_bound
            assert mc_estimate(case, start, target, 2, p, reps=100_000, seed=1, threads=1) == estimate
            assert mc_estimate(case, start, target, 2, p, reps=100_000, seed=1, threads=4) == estimate

    def test_negative_seed(self) -> None:
        with pytest.raises(DomainError):
            sample_path(CaseId.B, (0, 0), 1, (HALF, HALF), seed=-1)
        with pytest.raises(DomainError):
            mc_estimate(CaseId.B, (0, 0), (1, 1), 1, (HALF, HALF), reps=10, seed=-1)


class TestOracle:
    """Test the innovation-integrating oracle."""

    def test_one_step_b(self) -> None:
        kernel = one_step_kernel(CaseId.B, (0, 0), (HALF, HALF))
        assert kernel.support == {(0, 0): HALF, (1, 0): Fraction(1, 4), (1, 1): Fraction(1, 4)}
        assert kernel.tail_bound == 0

    def test_one_step_d(self) -> None:
        kernel = one_step_kernel(CaseId.D, (0, 0), (HALF, HALF))
        assert kernel.support == {(0, 0): Fraction(1, 4), (0, 1): Fraction(1, 4), (1, 1): HALF}

    def test_one_step_c_blocked_mass(self) -> None:
        kernel = one_step_kernel(CaseId.C, (1, 0), (HALF, HALF), Window(10))
        assert kernel[(1, 1)] == Fraction(1, 4)

    def test_binomial_two_steps(self) -> None:
        kernel = n_step_kernel(CaseId.B, (0,), 2, (HALF,))
        assert kernel.support == {(0,): Fraction(1, 4), (1,): HALF, (2,): Fraction(1, 4)}

    def test_negative_binomial_exact_inside_window(self) -> None:
        kernel = n_step_kernel(CaseId.A, (0,), 2, (HALF,), Window(12))
        for k in range(13):
            assert kernel[(k,)] == Fraction(k + 1, 4 * 2**k)
        assert kernel.tail_bound == 1 - kernel.total()
        assert kernel.tail_bound > 0

    def test_zero_steps_is_identity(self) -> None:
        kernel = n_step_kernel(CaseId.C, (2, 1), 0, (HALF, HALF), Window(3))
        assert kernel.support == {(2, 1): 1}

    def test_certified_window(self) -> None:
        tol = Fraction(1, 10**6)
        kernel = certified_n_step_kernel(CaseId.C, (0, 0), 1, (HALF, Fraction(1, 3)), tol)
        assert kernel.tail_bound <= tol

    def test_certified_window_gives_up(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setattr("ipk.config.IPK_MAX_REACH", 8)
        with pytest.raises(WindowError) as exc:
            certified_n_step_kernel(CaseId.A, (0,), 3, (Fraction(9, 10),), Fraction(1, 10**12))
        assert exc.value.tail_bound > 0

    def test_geometric_needs_window_for_reachable(self) -> None:
        with pytest.raises(DomainError):
            reachable_states(CaseId.A, (0,), 1)

    def test_innovation_probability(self) -> None:
        grid = InnovationGrid(((1, 0), (2, 0)), JumpLaw.GEOMETRIC)
        assert innovation_probability(CaseId.A, grid, (HALF, HALF)) == Fraction(1, 2**7)


class TestTheoremKernel:
    """Test the determinantal kernels."""

    def test_case_b_examples(self) -> None:
        p = (HALF, HALF)
        values = [theorem_kernel(CaseId.B, (0, 0), yp, 1, p) for yp in [(0, 0), (1, 0), (1, 1)]]
        assert values == [HALF, Fraction(1, 4), Fraction(1, 4)]
        assert theorem_core(CaseId.B, (0, 0), (0, 0), 1, p) == 2
        assert prefactor(CaseId.B, (0, 0), (0, 0), 1, p) == Fraction(1, 4)

    @pytest.mark.parametrize("case", [CaseId.A, CaseId.C])
    def test_single_particle_negative_binomial(self, case: CaseId) -> None:
        p = Fraction(1, 3)
        for n in range(4):
            for k in range(6):
                expected = (1 - p) ** n * p**k * (binomial(n - 1 + k, k) if n else int(k == 0))
                assert theorem_kernel(case, (2,), (2 + k,), n, (p,)) == expected

    def test_single_particle_binomial(self) -> None:
        assert theorem_kernel(CaseId.D, (0,), (2,), 3, (HALF,)) == Fraction(3, 8)

    @pytest.mark.parametrize("case", [CaseId.B, CaseId.D])
    @pytest.mark.parametrize("size", [1, 2, 3])
    @pytest.mark.parametrize("n", [1, 2])
    def test_bernoulli_matches_oracle(self, case: CaseId, size: int, n: int) -> None:
        p = (Fraction(1, 3), Fraction(2, 5), HALF)[:size]
        start = (0,) * size
        kernel = n_step_kernel(case, start, n, p)
        for target in reachable_states(case, start, n):
            assert theorem_kernel(case, start, target, n, p) == kernel[target]

    @pytest.mark.parametrize("case", [CaseId.A, CaseId.C])
    def test_geometric_matches_oracle_in_window(self, case: CaseId) -> None:
        """Test exact agreement on every state inside the window."""
        p = (HALF, Fraction(1, 3))
        start = (0, 0)
        kernel = n_step_kernel(case, start, 2, p, Window(6))
        for target in reachable_states(case, start, 2, Window(6)):
            assert theorem_kernel(case, start, target, 2, p) == kernel[target]

    @pytest.mark.parametrize("case", list(CaseId))
    def test_zero_steps_is_identity(self, case: CaseId) -> None:
        p = (HALF, Fraction(1, 3))
        start = (1, 1)
        for target in reachable_states(case, start, 1, Window(1)):
            assert theorem_kernel(case, start, target, 0, p) == int(target == start)

    @pytest.mark.parametrize("case", list(CaseId))
    def test_semigroup(self, case: CaseId) -> None:
        p = (HALF, Fraction(1, 4))
        start = (0, 0)
        for target in reachable_states(case, start, 2, Window(3)):
            assert compose_theorem_kernel(case, start, target, p) == theorem_kernel(case, start, target, 2, p)

    def test_chamber_violation(self) -> None:
        with pytest.raises(ChamberError):
            theorem_kernel(CaseId.A, (1, 0), (2, 2), 1, (HALF, HALF))

    @settings(max_examples=15, deadline=None)
    @given(probabilities(2))
    def test_bernoulli_rows_sum_to_one(self, p: tuple[Fraction, ...]) -> None:
        start = (0, 0)
        for case in (CaseId.B, CaseId.D):
            total = sum(theorem_kernel(case, start, y, 2, p) for y in reachable_states(case, start, 2))
            assert total == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("case", [CaseId.A, CaseId.C])
    def test_geometric_rows_at_acceptance_tolerance(self, case: CaseId) -> None:
        p = (HALF, Fraction(1, 3), Fraction(1, 4))
        tol = Fraction(1, 10**12)
        kernel = certified_n_step_kernel(case, (0, 0, 0), 2, p, tol)
        total = sum(theorem_kernel(case, (0, 0, 0), y, 2, p) for y in kernel.support)
        assert 1 - tol <= total <= 1


class TestShapeKernel:
    """Test the shape-process kernels."""

    def test_single_row(self) -> None:
        p = (Fraction(1, 3),)
        assert shape_kernel(JumpLaw.GEOMETRIC, (1,), (3,), 2, p) == Fraction(4, 9) * Fraction(1, 9) * 3
        assert shape_kernel(JumpLaw.BERNOULLI, (1,), (2,), 2, p) == Fraction(4, 9) * HALF * 2

    def test_geometric_row_sum_window(self) -> None:
        shapes = [(a, b) for a in range(13) for b in range(a + 1)]
        total = sum(shape_kernel(JumpLaw.GEOMETRIC, (0, 0), zp, 1, (HALF, HALF)) for zp in shapes)
        assert 1 - Fraction(1, 2**10) <= total <= 1

    def test_bernoulli_row_sum(self) -> None:
        p = (Fraction(1, 3), Fraction(2, 5))
        shapes = [(a, b) for a in range(4) for b in range(a + 1)]
        assert sum(shape_kernel(JumpLaw.BERNOULLI, (1, 0), zp, 2, p) for zp in shapes) == 1

