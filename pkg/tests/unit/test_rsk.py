"""Unit tests for the insertion correspondences."""

from collections import defaultdict
from fractions import Fraction

import pytest

from ipk.exceptions import DomainError, SupportError
from ipk.rsk import (
    MATCHED_CASE,
    ArrayMode,
    Correspondence,
    InsertionRule,
    Strip,
    Tableau,
    build_array,
    correspond,
    coupling_path,
    edge_vector,
    enumerate_grids,
    in_range,
    insert,
    joint_law,
    recording_tableau,
    shape_path_law,
)
from ipk.systems import CaseId, Edge, InnovationGrid, JumpLaw, innovation_probability, shape_kernel

HALF = Fraction(1, 2)


class TestTableau:
    """Test tableau validation and edges."""

    def test_rejects_bad_columns(self) -> None:
        with pytest.raises(DomainError):
            Tableau(((1, 2), (1,)))
        with pytest.raises(DomainError):
            Tableau(((2, 1),))

    def test_content_bound(self) -> None:
        t = Tableau(((1, 3),))
        with pytest.raises(SupportError):
            t.content(2)
        assert t.content(3) == (1, 0, 1)

    def test_edges(self) -> None:
        t = Tableau(((1, 1), (2,)))
        assert edge_vector(t, Edge.LEDGE, 2).values == (2, 1)
        assert edge_vector(t, Edge.REDGE, 2).values == (2, 2)
        assert edge_vector(Tableau(), Edge.LEDGE, 3).values == (0, 0, 0)
        assert edge_vector(Tableau(), Edge.REDGE, 3).values == (0, 0, 0)

    def test_padded_shape(self) -> None:
        assert Tableau(((1, 1), (2,))).padded_shape(3) == (2, 1, 0)
        with pytest.raises(SupportError):
            Tableau(((1,), (2,))).padded_shape(1)


class TestInsertion:
    """Test arrays and the two bumping rules."""

    def test_arrays(self) -> None:
        grid = InnovationGrid(((1,), (1,)), JumpLaw.BERNOULLI)
        assert build_array(grid, ArrayMode.LEX).columns == ((1, 1), (1, 2))
        assert build_array(grid, ArrayMode.ANTILEX).columns == ((1, 2), (1, 1))
        zero = InnovationGrid(((0, 0), (0, 0)), JumpLaw.BERNOULLI)
        assert build_array(zero, ArrayMode.LEX).columns == ()

    def test_multiplicity(self) -> None:
        grid = InnovationGrid(((2, 0), (0, 1)), JumpLaw.GEOMETRIC)
        assert build_array(grid, ArrayMode.LEX).columns == ((1, 1), (1, 1), (2, 2))

    def test_row_insert(self) -> None:
        assert insert(Tableau(((1, 2),)), 1, InsertionRule.ROW).rows == ((1, 1), (2,))

    def test_column_insert(self) -> None:
        assert insert(Tableau(((1, 2),)), 1, InsertionRule.COLUMN).rows == ((1, 1, 2),)

    @pytest.mark.parametrize("rule", list(InsertionRule))
    def test_insert_into_empty(self, rule: InsertionRule) -> None:
        assert insert(Tableau(), 3, rule).rows == ((3,),)

    def test_insert_rejects_zero(self) -> None:
        with pytest.raises(DomainError):
            insert(Tableau(), 0, InsertionRule.ROW)

    def test_column_bump_cascades(self) -> None:
        t = Tableau(((1, 1), (2,)))
        assert insert(t, 1, InsertionRule.COLUMN).rows == ((1, 1, 1), (2,))
        assert insert(t, 2, InsertionRule.COLUMN).rows == ((1, 1), (2, 2))


class TestCorrespond:
    """Test full correspondences."""

    def test_rsk_example(self) -> None:
        grid = InnovationGrid(((1,), (1,)), JumpLaw.GEOMETRIC)
        result = correspond(Correspondence.RSK, grid)
        assert result.P.rows == ((1, 2),)
        assert result.shapes == ((0, 0), (2, 0))
        _, _, coupled = coupling_path(Correspondence.RSK, grid)
        assert coupled
        assert edge_vector(result.P, Edge.REDGE, 2).values == (1, 2)

    @pytest.mark.parametrize("variant", list(Correspondence))
    def test_zero_grid(self, variant: Correspondence) -> None:
        grid = InnovationGrid(((0, 0), (0, 0)), variant.law)
        result = correspond(variant, grid)
        assert result.P.rows == ()
        assert result.shapes == ((0, 0),) * 3
        assert coupling_path(variant, grid)[2]

    def test_support_mismatch(self) -> None:
        with pytest.raises(SupportError):
            correspond(Correspondence.DUAL_RSK, InnovationGrid(((2,),), JumpLaw.GEOMETRIC))

    def test_variant_table(self) -> None:
        assert MATCHED_CASE == {
            Correspondence.RSK: CaseId.A,
            Correspondence.DUAL_RSK: CaseId.B,
            Correspondence.BURGE: CaseId.C,
            Correspondence.DUAL_BURGE: CaseId.D,
        }
        assert [v.strip for v in Correspondence] == [Strip.HORIZONTAL, Strip.VERTICAL, Strip.HORIZONTAL, Strip.VERTICAL]

    @pytest.mark.parametrize("variant", list(Correspondence))
    def test_injective_and_in_range(self, variant: Correspondence) -> None:
        grids = list(enumerate_grids(2, 2, variant.law, max_entry=2))
        results = [correspond(variant, grid) for grid in grids]
        assert len({(r.P.rows, r.shapes) for r in results}) == len(grids)
        assert all(in_range(variant, r.P, r.shapes) for r in results)

    def test_dual_rsk_sixteen_pairs(self) -> None:
        grids = list(enumerate_grids(2, 2, JumpLaw.BERNOULLI))
        assert len(grids) == 16
        pairs = {(r.P.rows, r.shapes) for r in (correspond(Correspondence.DUAL_RSK, g) for g in grids)}
        assert len(pairs) == 16

    @pytest.mark.parametrize("variant", list(Correspondence))
    def test_coupling_small(self, variant: Correspondence) -> None:
        for grid in enumerate_grids(2, 2, variant.law, max_entry=2):
            assert coupling_path(variant, grid)[2]

    @pytest.mark.slow
    @pytest.mark.parametrize("variant", list(Correspondence))
    def test_coupling_exhaustive(self, variant: Correspondence) -> None:
        for particles in (1, 2, 3):
            for steps in (1, 2, 3):
                for grid in enumerate_grids(particles, steps, variant.law, max_entry=2):
                    assert coupling_path(variant, grid)[2]


class TestRange:
    """Test the recording range."""

    def test_recording_tableau(self) -> None:
        assert recording_tableau([(0, 0), (2, 0), (3, 1)]) == ((1, 1, 2), (2,))
        assert recording_tableau([(0, 0), (1, 1), (2, 1)], strict=True) == ((1, 2), (1,))
        with pytest.raises(DomainError):
            recording_tableau([(0, 0), (1, 1)])

    def test_in_range_rejects_mismatched_shape(self) -> None:
        assert not in_range(Correspondence.RSK, Tableau(((1, 2),)), [(0, 0), (1, 1)])
        assert not in_range(Correspondence.DUAL_RSK, Tableau(((1, 2),)), [(0, 0), (2, 0)])
        assert in_range(Correspondence.DUAL_RSK, Tableau(((1,), (2,))), [(0, 0), (1, 1)])


class TestLaws:
    """Test the joint and shape-path laws."""

    def test_joint_law_examples(self) -> None:
        p = (HALF, HALF)
        assert joint_law(Correspondence.RSK, Tableau(((1, 2),)), [(0, 0), (2, 0)], 1, p) == Fraction(1, 16)
        assert joint_law(Correspondence.RSK, Tableau(((1, 2),)), [(0, 0), (1, 1)], 1, p) == 0
        assert joint_law(Correspondence.RSK, Tableau(), [(0, 0), (0, 0)], 1, p) == Fraction(1, 4)

    @pytest.mark.parametrize("variant", [Correspondence.DUAL_RSK, Correspondence.DUAL_BURGE])
    def test_pushforward_bernoulli(self, variant: Correspondence) -> None:
        p = (HALF, Fraction(1, 3))
        for grid in enumerate_grids(2, 2, variant.law):
            result = correspond(variant, grid)
            assert innovation_probability(variant.law, grid, p) == joint_law(variant, result.P, result.shapes, 2, p)

    def test_shape_process_matches_kernel(self) -> None:
        p = (HALF, Fraction(1, 3))
        final: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
        for grid in enumerate_grids(2, 2, JumpLaw.BERNOULLI):
            final[correspond(Correspondence.DUAL_RSK, grid).shapes[-1]] += innovation_probability(
                JumpLaw.BERNOULLI, grid, p
            )
        for shape, mass in final.items():
            assert mass == shape_kernel(JumpLaw.BERNOULLI, (0, 0), shape, 2, p)

    def test_shape_path_law_marginal(self) -> None:
        """Test P(Z(1) = head, Z(2) = final) against grid enumeration."""
        p = (HALF, Fraction(1, 3))
        joint: dict[tuple[tuple[int, ...], ...], Fraction] = defaultdict(Fraction)
        for grid in enumerate_grids(2, 2, JumpLaw.BERNOULLI):
            shapes = correspond(Correspondence.DUAL_BURGE, grid).shapes
            joint[(shapes[0], shapes[1], shapes[2])] += innovation_probability(JumpLaw.BERNOULLI, grid, p)
        for (z0, z1, z2), mass in joint.items():
            assert shape_path_law(Correspondence.DUAL_BURGE, [z0, z1], z2, 2, p) == mass

    def test_insertion_invariance_geometric(self) -> None:
        """Test RSK and Burge induce the same law on shape paths."""
        p = (HALF, Fraction(1, 3))
        laws: dict[Correspondence, dict[tuple[tuple[int, ...], ...], Fraction]] = {}
        for variant in (Correspondence.RSK, Correspondence.BURGE):
            law: dict[tuple[tuple[int, ...], ...], Fraction] = defaultdict(Fraction)
            for grid in enumerate_grids(2, 2, JumpLaw.GEOMETRIC, max_entry=3, max_total=3):
                law[correspond(variant, grid).shapes] += innovation_probability(JumpLaw.GEOMETRIC, grid, p)
            laws[variant] = dict(law)
        assert laws[Correspondence.RSK] == laws[Correspondence.BURGE]
