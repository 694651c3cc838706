"""
The four insertion correspondences coupling innovation grids to tableaux.

    variant    | array   | insertion | innovations | recording strips | case / edge
    -----------+---------+-----------+-------------+------------------+------------
    rsk        | lex     | row       | geometric   | horizontal       | A / redge
    dual-rsk   | lex     | column    | Bernoulli   | vertical         | B / ledge
    burge      | antilex | column    | geometric   | horizontal       | C / ledge
    dual-burge | antilex | row       | Bernoulli   | vertical         | D / redge

The recording tableau Q(n) is kept as the shape path Z(0), ..., Z(n);
``recording_tableau`` rebuilds the filled array when one is needed.
"""

import logging
from bisect import bisect_right
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from itertools import product

from .exceptions import DomainError, SupportError
from .symfun import RowMode, Shape, as_shape, odds, schur, skew_count
from .systems import CaseId, Chamber, Edge, InnovationGrid, JumpLaw, OrderedState, as_probabilities, run_grid

logger = logging.getLogger(__name__)

Rows = tuple[tuple[int, ...], ...]


class ArrayMode(StrEnum):
    LEX = "lex"
    ANTILEX = "antilex"


class InsertionRule(StrEnum):
    ROW = "row"
    COLUMN = "column"


class Strip(StrEnum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class Correspondence(StrEnum):
    RSK = "rsk"
    DUAL_RSK = "dual-rsk"
    BURGE = "burge"
    DUAL_BURGE = "dual-burge"

    @property
    def mode(self) -> ArrayMode:
        return ArrayMode.LEX if self in (Correspondence.RSK, Correspondence.DUAL_RSK) else ArrayMode.ANTILEX

    @property
    def rule(self) -> InsertionRule:
        if self in (Correspondence.RSK, Correspondence.DUAL_BURGE):
            return InsertionRule.ROW
        return InsertionRule.COLUMN

    @property
    def law(self) -> JumpLaw:
        if self in (Correspondence.RSK, Correspondence.BURGE):
            return JumpLaw.GEOMETRIC
        return JumpLaw.BERNOULLI

    @property
    def strip(self) -> Strip:
        return Strip.HORIZONTAL if self.law is JumpLaw.GEOMETRIC else Strip.VERTICAL

    @property
    def case(self) -> CaseId:
        return MATCHED_CASE[self]

    @property
    def edge(self) -> Edge:
        return self.case.edge


MATCHED_CASE: dict[Correspondence, CaseId] = {
    Correspondence.RSK: CaseId.A,
    Correspondence.DUAL_RSK: CaseId.B,
    Correspondence.BURGE: CaseId.C,
    Correspondence.DUAL_BURGE: CaseId.D,
}

MATCHED_VARIANT: dict[CaseId, Correspondence] = {case: variant for variant, case in MATCHED_CASE.items()}


@dataclass(frozen=True)
class Tableau:
    """Semi-standard Young tableau: rows weakly increasing, columns strictly increasing."""

    rows: Rows = ()

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.rows if row)
        object.__setattr__(self, "rows", rows)
        for r, row in enumerate(rows):
            if any(v < 1 for v in row):
                raise DomainError(f"Tableau entries must be positive, got row {row}")
            if any(row[c] > row[c + 1] for c in range(len(row) - 1)):
                raise DomainError(f"Row {r + 1} is not weakly increasing: {row}")
            if r > 0:
                above = rows[r - 1]
                if len(row) > len(above):
                    raise DomainError(f"Row {r + 1} is longer than the row above it")
                if any(row[c] <= above[c] for c in range(len(row))):
                    raise DomainError(f"Columns are not strictly increasing at row {r + 1}")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.rows)

    def padded_shape(self, size: int) -> Shape:
        if len(self.rows) > size:
            raise SupportError(f"Tableau has {len(self.rows)} rows, more than N={size}")
        return self.shape + (0,) * (size - len(self.rows))

    def content(self, size: int) -> tuple[int, ...]:
        """n_i(T): the number of entries equal to i, for i = 1..size."""
        counts = [0] * size
        for row in self.rows:
            for value in row:
                if value > size:
                    raise SupportError(f"Entry {value} exceeds the bound N={size}")
                counts[value - 1] += 1
        return tuple(counts)


@dataclass(frozen=True)
class TwoLineArray:
    columns: tuple[tuple[int, int], ...]
    mode: ArrayMode

    @property
    def bottom(self) -> tuple[int, ...]:
        return tuple(b for _, b in self.columns)


@dataclass(frozen=True)
class CorrespondenceResult:
    """P(n), every intermediate P(m), and the recording shape path Z(0..n)."""

    variant: Correspondence
    P: Tableau
    tableaux: tuple[Tableau, ...]
    shapes: tuple[Shape, ...]


# ============================================================================
# ARRAYS AND INSERTION
# ============================================================================


def build_array(xi: InnovationGrid, mode: ArrayMode | str) -> TwoLineArray:
    """Two-line array in which column (a, b) appears xi(b, a) times."""
    mode = ArrayMode(mode)
    labels = range(1, xi.particles + 1)
    ordered = labels if mode is ArrayMode.LEX else reversed(labels)
    columns = tuple(
        (a, b) for a in range(1, xi.steps + 1) for b in ordered for _ in range(xi.xi[b - 1][a - 1])
    )
    return TwoLineArray(columns=columns, mode=mode)


def _row_insert(rows: list[list[int]], b: int) -> None:
    value = b
    for row in rows:
        position = bisect_right(row, value)
        if position == len(row):
            row.append(value)
            return
        row[position], value = value, row[position]
    rows.append([value])


def _column_insert(rows: list[list[int]], b: int) -> None:
    value = b
    c = 0
    while True:
        height = sum(1 for row in rows if len(row) > c)
        target = next((r for r in range(height) if rows[r][c] >= value), None)
        if target is None:
            if height == len(rows):
                rows.append([value])
            else:
                rows[height].append(value)
            return
        rows[target][c], value = value, rows[target][c]
        c += 1


def insert(t: Tableau, b: int, rule: InsertionRule | str) -> Tableau:
    """Insert b by row bumping (leftmost entry > b) or column bumping (uppermost entry >= b)."""
    if b < 1:
        raise DomainError(f"Only positive labels can be inserted, got {b}")
    rows = [list(row) for row in t.rows]
    if InsertionRule(rule) is InsertionRule.ROW:
        _row_insert(rows, b)
    else:
        _column_insert(rows, b)
    return Tableau(tuple(tuple(row) for row in rows))


def correspond(variant: Correspondence | str, xi: InnovationGrid) -> CorrespondenceResult:
    """Run the variant's insertion over the array, recording the shape after each time step."""
    variant = Correspondence(variant)
    if xi.law is not variant.law:
        raise SupportError(f"{variant} needs {variant.law} innovations, got {xi.law}")
    size = xi.particles
    array = build_array(xi, variant.mode)
    tableau = Tableau()
    tableaux = [tableau]
    shapes = [tableau.padded_shape(size)]
    position = 0
    for a in range(1, xi.steps + 1):
        while position < len(array.columns) and array.columns[position][0] == a:
            tableau = insert(tableau, array.columns[position][1], variant.rule)
            position += 1
        tableaux.append(tableau)
        shapes.append(tableau.padded_shape(size))
    return CorrespondenceResult(variant=variant, P=tableau, tableaux=tuple(tableaux), shapes=tuple(shapes))


def edge_vector(t: Tableau, side: Edge | str, size: int) -> OrderedState:
    """ledge: i's in row i, in W^N. redge: first-row entries <= i, in W-hat^N."""
    t.content(size)
    side = Edge(side)
    if side is Edge.LEDGE:
        values = tuple(
            sum(1 for v in t.rows[i] if v == i + 1) if i < len(t.rows) else 0 for i in range(size)
        )
        return OrderedState(values, Chamber.W)
    first = t.rows[0] if t.rows else ()
    values = tuple(bisect_right(first, i) for i in range(1, size + 1))
    return OrderedState(values, Chamber.W_HAT)


# ============================================================================
# RECORDING RANGE
# ============================================================================


def is_strip(z: Sequence[int], zp: Sequence[int], strip: Strip) -> bool:
    """Whether zp / z is a horizontal or vertical strip."""
    if any(b < a for a, b in zip(z, zp)):
        return False
    if strip is Strip.VERTICAL:
        return all(b - a <= 1 for a, b in zip(z, zp))
    return all(zp[i + 1] <= z[i] for i in range(len(z) - 1))


def recording_tableau(shapes: Sequence[Sequence[int]], strict: bool = False) -> Rows:
    """Fill the cells added at time m with m.

    strict=False expects horizontal strips (a semi-standard Q); strict=True expects
    vertical strips (rows strictly increasing, columns weakly increasing).
    """
    strip = Strip.VERTICAL if strict else Strip.HORIZONTAL
    rows: list[list[int]] = [[] for _ in shapes[0]]
    for m in range(1, len(shapes)):
        if not is_strip(shapes[m - 1], shapes[m], strip):
            raise DomainError(f"{tuple(shapes[m])} / {tuple(shapes[m - 1])} is not a {strip} strip")
        for r, (before, after) in enumerate(zip(shapes[m - 1], shapes[m])):
            rows[r].extend([m] * (after - before))
    return tuple(tuple(row) for row in rows if row)


def in_range(variant: Correspondence | str, P: Tableau, shapes: Sequence[Sequence[int]]) -> bool:
    """Membership of (P, Q) in the variant's range."""
    variant = Correspondence(variant)
    size = len(shapes[0])
    try:
        P.content(size)
        final = P.padded_shape(size)
    except SupportError:
        return False
    if any(part != 0 for part in shapes[0]) or tuple(shapes[-1]) != final:
        return False
    return all(is_strip(shapes[m - 1], shapes[m], variant.strip) for m in range(1, len(shapes)))


# ============================================================================
# LAWS
# ============================================================================


def _variant_weights(variant: Correspondence, p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    probabilities = as_probabilities(p)
    return tuple(probabilities) if variant.law is JumpLaw.GEOMETRIC else odds(probabilities)


def _no_jump_mass(p: Sequence[Fraction], n: int) -> Fraction:
    scale = Fraction(1)
    for pk in as_probabilities(p):
        scale *= (1 - pk) ** n
    return scale


def joint_law(
    variant: Correspondence | str, S: Tableau, T: Sequence[Sequence[int]], n: int, p: Sequence[Fraction]
) -> Fraction:
    """P(P(n) = S, Q(n) = T) = prod(1 - p_k)^n alpha^S 1(sh(S) = sh(T)).

    T is a recording shape path of length n + 1; a path outside the variant's
    range has probability 0.
    """
    variant = Correspondence(variant)
    alpha = _variant_weights(variant, p)
    size = len(alpha)
    if len(T) != n + 1 or not in_range(variant, S, T):
        return Fraction(0)
    weight = Fraction(1)
    for a, count in zip(alpha, S.content(size)):
        weight *= a**count
    return _no_jump_mass(p, n) * weight


def enumerate_grids(
    particles: int, steps: int, law: JumpLaw | str, max_entry: int = 1, max_total: int | None = None
) -> Iterator[InnovationGrid]:
    """Every grid in the box, Bernoulli entries in {0, 1}, geometric in 0..max_entry.

    max_total keeps only grids whose entries sum to at most max_total.
    """
    law = JumpLaw(law)
    top = 1 if law is JumpLaw.BERNOULLI else max_entry
    for flat in product(range(top + 1), repeat=particles * steps):
        if max_total is not None and sum(flat) > max_total:
            continue
        rows = tuple(tuple(flat[k * steps:(k + 1) * steps]) for k in range(particles))
        yield InnovationGrid(rows, law)


def shape_path_law(
    variant: Correspondence | str,
    head: Sequence[Sequence[int]],
    final: Sequence[int],
    n: int,
    p: Sequence[Fraction],
) -> Fraction:
    """P(Z(0..m) = head, Z(n) = final) = prod(1 - p_k)^n s_final(alpha) g^{n-m}_{final / head_m}.

    g counts the fillings of the remaining strips: weak rows for the geometric
    variants, strict rows for the Bernoulli ones.
    """
    variant = Correspondence(variant)
    alpha = _variant_weights(variant, p)
    final_shape = as_shape(final)
    m = len(head) - 1
    if m > n or any(part != 0 for part in head[0]):
        return Fraction(0)
    if not all(is_strip(head[t - 1], head[t], variant.strip) for t in range(1, m + 1)):
        return Fraction(0)
    last = as_shape(head[-1])
    if any(b < a for a, b in zip(last, final_shape)):
        return Fraction(0)
    mode = RowMode.WEAK if variant.law is JumpLaw.GEOMETRIC else RowMode.STRICT
    fillings = skew_count(final_shape, last, n - m, mode)
    return _no_jump_mass(p, n) * schur(final_shape, alpha) * fillings


def coupling_path(
    variant: Correspondence | str, grid: InnovationGrid
) -> tuple[list[OrderedState], list[OrderedState], bool]:
    """Edge vectors of P(0..n) beside the matched case's recursion path from zero."""
    variant = Correspondence(variant)
    result = correspond(variant, grid)
    edges = [edge_vector(t, variant.edge, grid.particles) for t in result.tableaux]
    direct = run_grid(variant.case, grid)
    coupled = [e.values for e in edges] == [y.values for y in direct]
    if not coupled:
        logger.debug(f"{variant} coupling differs on grid {grid.xi}")
    return edges, direct, coupled
