"""Unit tests for symmetric-function primitives."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ipk.exceptions import DomainError, WindowError
from ipk.symfun import (
    Family,
    Orientation,
    RowMode,
    SymKind,
    as_shape,
    as_weights,
    complete_h,
    elementary_e,
    enumerate_skew_fillings,
    forward_w_series,
    gt_levels,
    he_identity,
    hg_product_coefficients,
    jump_basis,
    odds,
    schur,
    schur_gt,
    schur_jacobi_trudi,
    series_by_partial_fractions,
    skew_count,
    transform_f,
    transform_f_partial,
    weight_power,
    windowed,
)

from strategies import shapes, weights

HALF_THIRD_QUARTER = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))


class TestValidation:
    """Test weight and shape coercion."""

    def test_weights_must_be_positive(self) -> None:
        with pytest.raises(DomainError):
            as_weights([Fraction(1, 2), 0])
        with pytest.raises(DomainError):
            as_weights([])

    def test_shape_must_decrease(self) -> None:
        assert as_shape([2, 2, -1]) == (2, 2, -1)
        with pytest.raises(DomainError):
            as_shape([0, 1])

    def test_odds(self) -> None:
        assert odds([Fraction(1, 2), Fraction(1, 3)]) == (1, Fraction(1, 2))


class TestCompleteElementary:
    """Test h_r, e_r and their windows."""

    def test_complete_examples(self) -> None:
        assert complete_h(2, (1, 1)) == 3
        assert complete_h(-1, (Fraction(1, 2),)) == 0
        assert complete_h(3, (Fraction(1, 2), Fraction(1, 3))) == Fraction(65, 216)

    def test_elementary_examples(self) -> None:
        assert elementary_e(2, (2, 3)) == 6
        assert elementary_e(3, (2, 3)) == 0
        assert elementary_e(1, HALF_THIRD_QUARTER) == Fraction(13, 12)
        assert elementary_e(-1, HALF_THIRD_QUARTER) == 0

    def test_windowed_examples(self) -> None:
        assert windowed(SymKind.H, 2, 1, 3, HALF_THIRD_QUARTER) == Fraction(37, 144)
        assert windowed(SymKind.H, 5, 2, 2, HALF_THIRD_QUARTER) == 0
        assert windowed(SymKind.H, 0, 2, 2, HALF_THIRD_QUARTER) == 1
        assert windowed(SymKind.E, 1, 1, 2, (Fraction(2), Fraction(5))) == 5

    def test_windowed_out_of_range(self) -> None:
        with pytest.raises(DomainError):
            windowed(SymKind.H, 1, 2, 1, HALF_THIRD_QUARTER)
        with pytest.raises(DomainError):
            windowed(SymKind.E, 1, 0, 4, HALF_THIRD_QUARTER)

    @settings(max_examples=30)
    @given(weights(3))
    def test_he_identity(self, alpha: tuple[Fraction, ...]) -> None:
        """Test the e/h convolution for every window pair and degree."""
        for i, j in product(range(1, 4), repeat=2):
            for n in range(-3, 11):
                lhs, rhs = he_identity(i, j, n, alpha)
                assert lhs == rhs

    @given(weights(3))
    def test_generating_functions_invert(self, alpha: tuple[Fraction, ...]) -> None:
        """Test H(x) E(-x) = 1 through degree 10."""
        assert hg_product_coefficients(10, alpha) == [1] + [0] * 10


class TestJumpBasis:
    """Test the w and v families."""

    def test_examples(self) -> None:
        assert jump_basis(Family.W, 3, 2) == 6
        assert jump_basis(Family.V, 3, 2) == 3
        assert jump_basis(Family.W, 2, -1) == 0
        assert jump_basis(Family.V, 2, 3) == 0

    def test_w_zero_is_point_mass(self) -> None:
        """Test w_0 = 1(k = 0) so that zero steps give the identity."""
        assert [jump_basis(Family.W, 0, k) for k in range(-1, 3)] == [0, 1, 0, 0]
        assert [jump_basis(Family.V, 0, k) for k in range(-1, 3)] == [0, 1, 0, 0]


class TestTransforms:
    """Test f and f-hat."""

    @pytest.mark.parametrize("family", list(Family))
    def test_diagonal_is_basis(self, family: Family) -> None:
        for n, k in product(range(4), range(-2, 5)):
            assert transform_f(family, Orientation.HAT, n, 1, 1, HALF_THIRD_QUARTER, k) == jump_basis(family, n, k)

    def test_two_term_difference(self) -> None:
        assert transform_f(Family.V, Orientation.FORWARD, 1, 2, 1, (Fraction(1), Fraction(1)), -1) == -1

    def test_geometric_series(self) -> None:
        value = transform_f(Family.W, Orientation.FORWARD, 1, 1, 2, (Fraction(1, 3), Fraction(1, 2)), 0)
        assert value == 2

    def test_divergent_series(self) -> None:
        with pytest.raises(DomainError):
            transform_f(Family.W, Orientation.FORWARD, 1, 1, 2, (Fraction(1, 2), Fraction(3, 2)), 0)

    def test_indices_out_of_range(self) -> None:
        with pytest.raises(DomainError):
            transform_f(Family.V, Orientation.HAT, 1, 0, 1, HALF_THIRD_QUARTER, 0)

    def test_closed_form_negative_offset(self) -> None:
        """Test the closed form subtracts the terms where w vanishes."""
        window = (Fraction(1, 2),)
        direct = sum((Fraction(1, 2) ** ell * jump_basis(Family.W, 2, ell - 3) for ell in range(200)), Fraction(0))
        assert abs(forward_w_series(2, -3, window) - direct) < Fraction(1, 10**40)

    @pytest.mark.parametrize("n,k", [(0, -2), (1, 0), (2, 3), (3, -1), (4, -6)])
    def test_closed_form_matches_partial_fractions(self, n: int, k: int) -> None:
        window = (Fraction(1, 3), Fraction(1, 4))
        assert forward_w_series(n, k, window) == series_by_partial_fractions(n, k, window)

    def test_closed_form_handles_repeated_weights(self) -> None:
        window = (Fraction(1, 3), Fraction(1, 3))
        with pytest.raises(DomainError):
            series_by_partial_fractions(2, 1, window)
        partial, tail = transform_f_partial(2, 1, 3, (Fraction(1, 2),) + window, 1, 60)
        assert abs(forward_w_series(2, 1, window) - partial) <= tail

    @pytest.mark.parametrize("depth", [10, 20, 40])
    def test_partial_sums_certified(self, depth: int) -> None:
        alpha = (Fraction(1, 2), Fraction(1, 5), Fraction(1, 4))
        partial, tail = transform_f_partial(3, 1, 3, alpha, 2, depth)
        assert tail > 0
        assert abs(forward_w_series(3, 2, alpha[1:3]) - partial) <= tail

    @pytest.mark.parametrize("depth", [10, 20, 40])
    def test_slowly_contracting_window_certified(self, depth: int) -> None:
        alpha = (Fraction(1, 2), Fraction(7, 8), Fraction(9, 10))
        partial, tail = transform_f_partial(3, 1, 3, alpha, 2, depth)
        assert tail > 0
        assert abs(forward_w_series(3, 2, alpha[1:3]) - partial) <= tail

    def test_partial_sum_before_support(self) -> None:
        alpha = (Fraction(1, 2), Fraction(2, 3))
        partial, tail = transform_f_partial(2, 1, 2, alpha, -15, 10)
        assert partial == 0
        assert abs(forward_w_series(2, -15, alpha[1:]) - partial) <= tail

    def test_partial_sum_not_contracting(self, monkeypatch: pytest.MonkeyPatch) -> None:
        alpha = (Fraction(1, 2), Fraction(9, 10))
        partial, tail = transform_f_partial(8, 1, 2, alpha, 0, 2)
        assert abs(forward_w_series(8, 0, alpha[1:]) - partial) <= tail
        monkeypatch.setattr("ipk.config.IPK_MAX_REACH", 16)
        with pytest.raises(WindowError):
            transform_f_partial(8, 1, 2, alpha, 0, 2)


class TestSchur:
    """Test the two Schur evaluations."""

    def test_examples(self) -> None:
        assert schur((2, 0), (1, 1)) == 3
        a, b = Fraction(1, 2), Fraction(1, 3)
        assert schur((2, 0), (a, b)) == a * a + a * b + b * b
        assert schur((1, 1), (a, b)) == a * b
        assert schur((0, 0, 0), HALF_THIRD_QUARTER) == 1

    def test_gt_level_count(self) -> None:
        assert len(list(gt_levels((2, 0)))) == 3
        assert len(list(gt_levels((2, 1, 0)))) == 8

    @settings(max_examples=25)
    @given(st.data())
    def test_jacobi_trudi_matches_patterns(self, data: st.DataObject) -> None:
        size = data.draw(st.integers(1, 4))
        alpha = data.draw(weights(size))
        z = data.draw(shapes(size, -2, 4))
        assert schur_jacobi_trudi(z, alpha) == schur_gt(z, alpha)

    @given(weights(3), shapes(3), st.integers(-2, 2))
    def test_translation_covariance(self, alpha: tuple[Fraction, ...], z: tuple[int, ...], c: int) -> None:
        moved = tuple(v + c for v in z)
        assert schur(moved, alpha) == weight_power(alpha, [c] * 3) * schur(z, alpha)


class TestSkewCounts:
    """Test Jacobi-Trudi skew counts against direct fillings."""

    def test_examples(self) -> None:
        assert skew_count((2, 0), (0, 0), 2, RowMode.WEAK) == 3
        assert skew_count((1, 1), (0, 0), 2, RowMode.WEAK) == 1
        assert skew_count((1, 1), (0, 0), 2, RowMode.STRICT) == 3
        for mode in RowMode:
            assert skew_count((3, 1), (3, 1), 4, mode) == 1

    def test_mu_not_contained(self) -> None:
        with pytest.raises(DomainError):
            skew_count((1, 0), (2, 0), 1, RowMode.WEAK)

    @settings(max_examples=60)
    @given(shapes(3, 0, 3), shapes(3, 0, 3), st.integers(0, 3), st.sampled_from(list(RowMode)))
    def test_matches_enumeration(self, lam: tuple[int, ...], mu: tuple[int, ...], k: int, mode: RowMode) -> None:
        outer = tuple(max(a, b) for a, b in zip(lam, mu))
        assert skew_count(outer, mu, k, mode) == enumerate_skew_fillings(outer, mu, k, mode)
