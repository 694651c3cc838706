"""
Gelfand-Tsetlin patterns and the intertwining kernels between the shape process
and the particle systems.

A pattern x = (x^1, ..., x^N) has interlacing levels
x^k_{i+1} <= x^{k-1}_i <= x^k_i. Its left edge (x^1_1, ..., x^N_N) lies in W^N,
its right edge (x^1_1, ..., x^N_1) in W-hat^N. The kernels are

    Lambda(z, y) = alpha^-y  sum_{sh(x) = z, ledge(x) = y} alpha^x
    Pi(y, z)     = det{(-1)^d e^{(iN)}_d(alpha)},  d = y_i - z_j - i + j

and their right-edge versions, which evaluate everything at alpha^-1 after the
involution x^k_i -> -x^k_{k-i+1}. Pi inverts Lambda on both sides, which turns
the intertwining Lambda Q = P Lambda into Q = Pi P Lambda.

Normalisations: with c = prod(1 - p_k)^n and theta the case's prefactor base,

    Q_n(y, y') = c theta^{y' - y} Q-circle(y, y')
    P_n(z, z') = c (s_{z'} / s_z) P-circle(z, z')
    K(z, y)    = alpha^y Lambda(z, y) / s_z(alpha),   alpha = theta

so P_n K = K Q_n holds exactly when P-circle Lambda = Lambda Q-circle.
"""

import logging
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product

from . import config
from .exactnum import det_exact
from .exceptions import ChamberError, DimensionError, DomainError, WindowError
from .rsk import Tableau
from .symfun import (
    Shape,
    SymKind,
    as_shape,
    gt_levels,
    gt_weight,
    inverse_weights,
    schur,
    weight_power,
    windowed,
)
from .systems import (
    CaseId,
    Chamber,
    Edge,
    JumpLaw,
    Window,
    as_probabilities,
    prefactor,
    shape_core,
    shape_kernel,
    theorem_core,
    theorem_kernel,
)

logger = logging.getLogger(__name__)

StateKey = tuple[int, ...]
KernelFn = Callable[[StateKey, StateKey], Fraction]


class IntertwinerKind(StrEnum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def edge(self) -> Edge:
        return Edge.LEDGE if self is IntertwinerKind.LEFT else Edge.REDGE

    @property
    def chamber(self) -> Chamber:
        return Chamber.W if self is IntertwinerKind.LEFT else Chamber.W_HAT

    @classmethod
    def for_case(cls, case: CaseId) -> "IntertwinerKind":
        return cls.LEFT if CaseId(case).edge is Edge.LEDGE else cls.RIGHT


class LambdaMethod(StrEnum):
    ENUM = "enum"
    DET = "det"
    GV = "gv"


class IntertwinerMethod(StrEnum):
    TABLEAU = "tableau"
    LAMBDA = "lambda"


@dataclass(frozen=True)
class GTPattern:
    levels: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        levels = tuple(tuple(int(v) for v in level) for level in self.levels)
        object.__setattr__(self, "levels", levels)
        for k, level in enumerate(levels, start=1):
            if len(level) != k:
                raise DomainError(f"Level {k} must have {k} entries, got {level}")
        for k in range(1, len(levels)):
            upper, lower = levels[k], levels[k - 1]
            for i in range(k):
                if not upper[i + 1] <= lower[i] <= upper[i]:
                    raise DomainError(f"Levels {k} and {k + 1} do not interlace: {lower} / {upper}")

    @property
    def size(self) -> int:
        return len(self.levels)

    @property
    def shape(self) -> Shape:
        return self.levels[-1]

    @property
    def ledge(self) -> StateKey:
        return tuple(level[-1] for level in self.levels)

    @property
    def redge(self) -> StateKey:
        return tuple(level[0] for level in self.levels)

    def edge(self, side: Edge | str) -> StateKey:
        return self.ledge if Edge(side) is Edge.LEDGE else self.redge

    def hat(self) -> "GTPattern":
        """x-hat^k_i = -x^k_{k-i+1}."""
        return GTPattern(tuple(tuple(-v for v in reversed(level)) for level in self.levels))

    @classmethod
    def from_tableau(cls, t: Tableau, size: int) -> "GTPattern":
        """x^j_i = number of entries <= j in row i."""
        t.content(size)
        levels = []
        for j in range(1, size + 1):
            level = []
            for i in range(j):
                row = t.rows[i] if i < len(t.rows) else ()
                level.append(sum(1 for v in row if v <= j))
            levels.append(tuple(level))
        return cls(tuple(levels))

    def to_tableau(self) -> Tableau:
        if self.shape[-1] < 0:
            raise DomainError(f"Pattern with shape {self.shape} has negative parts and encodes no tableau")
        rows = []
        for i in range(self.size):
            row: list[int] = []
            previous = 0
            for j in range(i + 1, self.size + 1):
                count = self.levels[j - 1][i]
                row.extend([j] * (count - previous))
                previous = count
            rows.append(tuple(row))
        return Tableau(tuple(rows))


@dataclass(frozen=True)
class IntertwiningResult:
    lhs: Fraction
    rhs: Fraction
    tail_bound: Fraction


@dataclass(frozen=True)
class ConjugationResult:
    """Q-circle directly and as Pi P-circle Lambda, with the assembled kernel beside the determinantal one."""

    direct_core: Fraction
    conjugated_core: Fraction
    tail_bound: Fraction
    kernel: Fraction
    theorem: Fraction


# ============================================================================
# STATE BOXES
# ============================================================================


def chamber_box(low: int, high: int, size: int, chamber: Chamber) -> list[StateKey]:
    """Every chamber state with all entries in [low, high]."""
    states = combinations_with_replacement(range(low, high + 1), size)
    if chamber is Chamber.W:
        return [tuple(reversed(s)) for s in states]
    return [tuple(s) for s in states]


def lambda_support(z: Sequence[int], kind: IntertwinerKind | str) -> list[StateKey]:
    """Edges y with Lambda(z, y) possibly nonzero: entries in [z_N, z_1], last entry pinned."""
    kind = IntertwinerKind(kind)
    pinned = z[-1] if kind is IntertwinerKind.LEFT else z[0]
    return [y for y in chamber_box(z[-1], z[0], len(z), kind.chamber) if y[-1] == pinned]


def pi_support(y: Sequence[int]) -> list[Shape]:
    """Shapes z with Pi(y, z) possibly nonzero."""
    size = len(y)
    return chamber_box(min(y) - size, max(y) + size, size, Chamber.W)


def _reflect(z: Sequence[int]) -> Shape:
    return tuple(-v for v in reversed(z))


def _check_edge(y: Sequence[int], kind: IntertwinerKind) -> StateKey:
    values = tuple(int(v) for v in y)
    if not kind.chamber.contains(values):
        raise ChamberError(f"{values} is not in chamber {kind.chamber}", values=values)
    return values


def _check_lengths(z: Sequence[int], y: Sequence[int], alpha: Sequence[Fraction]) -> None:
    if not len(z) == len(y) == len(alpha):
        raise DimensionError(f"Shape {tuple(z)}, edge {tuple(y)} and {len(alpha)} weights disagree in length")


# ============================================================================
# PATTERNS
# ============================================================================


def enumerate_gt(
    z: Sequence[int], edge_constraint: tuple[Edge | str, Sequence[int]] | None = None
) -> list[GTPattern]:
    """Every pattern with top row z, optionally with a prescribed edge."""
    patterns = (GTPattern(levels) for levels in gt_levels(as_shape(z)))
    if edge_constraint is None:
        return list(patterns)
    side, vector = Edge(edge_constraint[0]), tuple(edge_constraint[1])
    return [x for x in patterns if x.edge(side) == vector]


def pattern_weight(x: GTPattern, alpha: Sequence[Fraction]) -> Fraction:
    """alpha^x = alpha_1^{x^1_1} prod_k alpha_k^{|x^k| - |x^{k-1}|}."""
    return gt_weight(x.levels, alpha)


# ============================================================================
# LAMBDA AND PI
# ============================================================================


def _lambda_det(z: Shape, y: StateKey, alpha: Sequence[Fraction], kind: IntertwinerKind) -> Fraction:
    size = len(z)
    if kind is IntertwinerKind.LEFT:
        matrix = [
            [windowed(SymKind.H, z[i] - y[j] - i + j, j + 1, size, alpha) for j in range(size)]
            for i in range(size)
        ]
    else:
        beta = inverse_weights(tuple(alpha))
        matrix = [
            [windowed(SymKind.H, y[j] - z[size - 1 - i] - i + j, j + 1, size, beta) for j in range(size)]
            for i in range(size)
        ]
    return det_exact(matrix)


def _lambda_enum(z: Shape, y: StateKey, alpha: Sequence[Fraction], kind: IntertwinerKind) -> Fraction:
    total = sum((pattern_weight(x, alpha) for x in enumerate_gt(z, (kind.edge, y))), Fraction(0))
    return weight_power(alpha, [-v for v in y]) * total


def _lambda_paths(z: Shape, y: StateKey, alpha: Sequence[Fraction]) -> Fraction:
    """Weighted sum over vertex-disjoint lattice paths.

    Path k (k < N) starts at (y_k - k, k + 1) and ends at (z_k - k, N), moving
    right or up; a run of e horizontal steps at height r weighs alpha_r^e.
    The last path is the single vertex y_N = z_N. Paths are built height by
    height: at height r each live path picks where its run ends.
    """
    size = len(z)
    if y[-1] != z[-1]:
        return Fraction(0)
    if size == 1:
        return Fraction(1)
    weights = tuple(Fraction(a) for a in alpha)

    def at_height(r: int, entering: StateKey, k: int, ends: StateKey, weight: Fraction) -> Fraction:
        if k == len(entering):
            if r == size:
                return weight
            # path r starts one level up, at the unshifted position y_r
            return at_height(r + 1, ends + (y[r - 1],), 0, (), weight)
        start = entering[k]
        choices = (z[k],) if r == size else range(start, z[k] + 1)
        total = Fraction(0)
        for end in choices:
            if end < start:
                continue
            # shifted run of path k must stay strictly left of path k-1's entry vertex
            if k > 0 and end - k >= entering[k - 1] - (k - 1):
                continue
            total += at_height(r, entering, k + 1, ends + (end,), weight * weights[r - 1] ** (end - start))
        return total

    return at_height(2, (y[0],), 0, (), Fraction(1))


def lambda_kernel(
    z: Sequence[int],
    y: Sequence[int],
    alpha: Sequence[Fraction],
    kind: IntertwinerKind | str = IntertwinerKind.LEFT,
    method: LambdaMethod | str = LambdaMethod.DET,
) -> Fraction:
    """Lambda(z, y) or Lambda-hat(z, y) by pattern enumeration, determinant or path sum."""
    kind, method = IntertwinerKind(kind), LambdaMethod(method)
    z = as_shape(z)
    y = _check_edge(y, kind)
    _check_lengths(z, y, alpha)

    if method is LambdaMethod.ENUM:
        return _lambda_enum(z, y, alpha, kind)
    if method is LambdaMethod.DET:
        return _lambda_det(z, y, alpha, kind)
    if kind is IntertwinerKind.LEFT:
        return _lambda_paths(z, y, alpha)
    # right paths are left paths on reflected data at inverted weights
    return _lambda_paths(_reflect(z), tuple(-v for v in y), inverse_weights(tuple(alpha)))


def pi_kernel(
    y: Sequence[int],
    z: Sequence[int],
    alpha: Sequence[Fraction],
    kind: IntertwinerKind | str = IntertwinerKind.LEFT,
) -> Fraction:
    """Pi(y, z) or Pi-hat(y, z)."""
    kind = IntertwinerKind(kind)
    z = as_shape(z)
    y = _check_edge(y, kind)
    _check_lengths(z, y, alpha)
    size = len(z)
    if kind is IntertwinerKind.LEFT:
        weights = tuple(alpha)
        degrees = [[y[i] - z[j] - i + j for j in range(size)] for i in range(size)]
    else:
        weights = inverse_weights(tuple(alpha))
        degrees = [[z[size - 1 - j] - y[i] - i + j for j in range(size)] for i in range(size)]
    matrix = [
        [(-1 if degrees[i][j] % 2 else 1) * windowed(SymKind.E, degrees[i][j], i + 1, size, weights)
         for j in range(size)]
        for i in range(size)
    ]
    return det_exact(matrix)


def markov_intertwiner(
    z: Sequence[int],
    y: Sequence[int],
    alpha: Sequence[Fraction],
    kind: IntertwinerKind | str = IntertwinerKind.LEFT,
    method: IntertwinerMethod | str = IntertwinerMethod.LAMBDA,
) -> Fraction:
    """K(z, y) = (1 / s_z) sum_{sh(T) = z, edge(T) = y} alpha^T.

    The tableau method sums over tableaux; the lambda method uses
    alpha^y Lambda(z, y) / s_z(alpha).

    Raises:
        DomainError: If z has a negative part.
    """
    kind, method = IntertwinerKind(kind), IntertwinerMethod(method)
    z = as_shape(z)
    y = _check_edge(y, kind)
    _check_lengths(z, y, alpha)
    if z[-1] < 0:
        raise DomainError(f"Shape {z} has a negative part; use lambda_kernel for the general case")

    if method is IntertwinerMethod.LAMBDA:
        return weight_power(alpha, y) * lambda_kernel(z, y, alpha, kind) / schur(z, alpha)

    total = Fraction(0)
    for x in enumerate_gt(z, (kind.edge, y)):
        total += weight_power(alpha, x.to_tableau().content(len(z)))
    return total / schur(z, alpha)


# ============================================================================
# KERNEL PRODUCTS AND INVERSES
# ============================================================================


def kernel_product(
    left: KernelFn,
    right: KernelFn,
    rows: Sequence[StateKey],
    mids: Sequence[StateKey],
    cols: Sequence[StateKey],
) -> dict[tuple[StateKey, StateKey], Fraction]:
    """(left . right)(r, c) = sum_{m in mids} left(r, m) right(m, c)."""
    left_rows = {r: [(m, v) for m in mids if (v := left(r, m)) != 0] for r in rows}
    right_rows: dict[StateKey, dict[StateKey, Fraction]] = {}
    for m in {m for entries in left_rows.values() for m, _ in entries}:
        right_rows[m] = {c: v for c in cols if (v := right(m, c)) != 0}

    product_entries: dict[tuple[StateKey, StateKey], Fraction] = {}
    for r in rows:
        for c in cols:
            product_entries[(r, c)] = sum(
                (v * right_rows[m].get(c, Fraction(0)) for m, v in left_rows[r]), Fraction(0)
            )
    return product_entries


def inverse_check(
    size: int,
    alpha: Sequence[Fraction],
    box: tuple[int, int] = (0, 5),
    kind: IntertwinerKind | str = IntertwinerKind.LEFT,
) -> tuple[dict[tuple[StateKey, StateKey], Fraction], dict[tuple[StateKey, StateKey], Fraction]]:
    """Pi Lambda on edges and Lambda Pi on shapes, both taken over a state box.

    Returns:
        (Pi Lambda, Lambda Pi); both should be identity matrices.
    """
    kind = IntertwinerKind(kind)
    if len(alpha) != size:
        raise DimensionError(f"Expected {size} weights, got {len(alpha)}")
    low, high = box
    edges = chamber_box(low, high, size, kind.chamber)
    shapes = chamber_box(low, high, size, Chamber.W)
    wide_shapes = chamber_box(low - size, high + size, size, Chamber.W)

    def pi(y: StateKey, z: StateKey) -> Fraction:
        return pi_kernel(y, z, alpha, kind)

    def lam(z: StateKey, y: StateKey) -> Fraction:
        return lambda_kernel(z, y, alpha, kind)

    pi_lambda = kernel_product(pi, lam, edges, wide_shapes, edges)
    lambda_pi = kernel_product(lam, pi, shapes, edges, shapes)
    logger.debug(f"Inverse check N={size} {kind}: {len(edges)} edges, {len(shapes)} shapes")
    return pi_lambda, lambda_pi


def m_matrix_det(y: Sequence[int], yp: Sequence[int], alpha: Sequence[Fraction]) -> Fraction:
    """det{m^{(ij)}_{y_i - y'_j - i + j}} with m^{(ij)}_r = sum_s (-1)^s e^{(iN)}_s h^{(jN)}_{r-s}."""
    size = len(alpha)

    def m(i: int, j: int, r: int) -> Fraction:
        return sum(
            ((-1) ** s * windowed(SymKind.E, s, i, size, alpha) * windowed(SymKind.H, r - s, j, size, alpha)
             for s in range(size - i + 1)),
            Fraction(0),
        )

    matrix = [[m(i + 1, j + 1, y[i] - yp[j] - i + j) for j in range(size)] for i in range(size)]
    return det_exact(matrix)


def cauchy_binet_check(
    phi: Sequence[Mapping[int, Fraction]],
    psi: Sequence[Mapping[int, Fraction]],
    window: tuple[int, int],
) -> tuple[Fraction, Fraction]:
    """Both sides of sum_{z in W^N} det{phi_i(z_j - j)} det{psi_j(z_i - i)} = det{sum_z phi_i(z) psi_j(z)}.

    Raises:
        WindowError: If any table has support outside the window.
    """
    size = len(phi)
    if len(psi) != size:
        raise DimensionError("phi and psi need the same number of functions", size, len(psi))
    low, high = window
    for table in (*phi, *psi):
        outside = [u for u, v in table.items() if v != 0 and not low <= u <= high]
        if outside:
            raise WindowError(f"Table support {sorted(outside)} escapes the window [{low}, {high}]")

    def at(table: Mapping[int, Fraction], u: int) -> Fraction:
        return Fraction(table.get(u, 0))

    lhs = Fraction(0)
    for increasing in combinations(range(low, high + 1), size):
        u = tuple(reversed(increasing))  # u_j = z_j - j is strictly decreasing
        first = det_exact([[at(phi[i], u[j]) for j in range(size)] for i in range(size)])
        if first == 0:
            continue
        lhs += first * det_exact([[at(psi[j], u[i]) for j in range(size)] for i in range(size)])

    rhs = det_exact(
        [[sum((at(phi[i], u) * at(psi[j], u) for u in range(low, high + 1)), Fraction(0)) for j in range(size)]
         for i in range(size)]
    )
    return lhs, rhs


# ============================================================================
# INTERTWINING
# ============================================================================


def _total_pmf(law: JumpLaw, p: Sequence[Fraction], n: int, t: int) -> list[Fraction]:
    pmf = [Fraction(1)] + [Fraction(0)] * t
    for pk in as_probabilities(p):
        if law is JumpLaw.GEOMETRIC:
            single = [(1 - pk) * pk**m for m in range(t + 1)]
        else:
            single = [1 - pk, pk]
        for _ in range(n):
            pmf = [
                sum((pmf[s - m] * single[m] for m in range(min(s, len(single) - 1) + 1)), Fraction(0))
                for s in range(t + 1)
            ]
    return pmf


def jump_total_tail(law: JumpLaw | str, p: Sequence[Fraction], n: int, t: int) -> Fraction:
    """P(S > t) for S the total of n innovations per particle."""
    if t < 0:
        return Fraction(1)
    return 1 - sum(_total_pmf(JumpLaw(law), p, n, t), Fraction(0))


@lru_cache(maxsize=256)
def certified_excess(law: JumpLaw | str, p: Sequence[Fraction], n: int, tolerance: Fraction) -> int:
    """Smallest t with P(S > t) <= tolerance.

    Raises:
        WindowError: If t would exceed IPK_MAX_REACH.
    """
    law = JumpLaw(law)
    top = 16
    while True:
        cumulative = Fraction(0)
        for t, mass in enumerate(_total_pmf(law, p, n, top)):
            cumulative += mass
            if 1 - cumulative <= tolerance:
                return t
        if top >= config.IPK_MAX_REACH:
            raise WindowError(f"Total innovation tail stays above {tolerance} up to {top}", tail_bound=1 - cumulative)
        top = min(2 * top, config.IPK_MAX_REACH)


def _grown_shapes(
    z: Shape, y: StateKey, kind: IntertwinerKind, upper: int
) -> Iterator[Shape]:
    """Shapes z' containing z on which Lambda(z', y) can be nonzero, with z'_1 <= upper."""
    size = len(z)
    if kind is IntertwinerKind.LEFT:
        ranges = [range(max(z[k], y[k]), upper + 1) for k in range(size - 1)]
        ranges.append(range(y[-1], y[-1] + 1) if y[-1] >= z[-1] else range(0))
    else:
        ranges = [range(y[-1], y[-1] + 1) if y[-1] >= z[0] else range(0)]
        ranges += [range(z[i], y[size - 1 - i] + 1) for i in range(1, size)]
    for values in product(*ranges):
        if Chamber.W.contains(values):
            yield tuple(values)


def _truncates(case: CaseId, kind: IntertwinerKind) -> bool:
    return kind is IntertwinerKind.LEFT and case.law is JumpLaw.GEOMETRIC


def intertwining_check(
    case: CaseId,
    z: Sequence[int],
    y: Sequence[int],
    n: int,
    p: Sequence[Fraction],
    reach: int | None = None,
    tolerance: Fraction | None = None,
) -> IntertwiningResult:
    """Both sides of (P_n K)(z, y) = (K Q_n)(z, y).

    The left side sums over grown shapes z'; for the geometric left kind the
    shapes with z'_1 > z_1 + t are dropped, and since K <= 1 the dropped part is
    at most P(total innovations > t). Without an explicit reach, t is the
    smallest excess certified below tolerance.
    """
    case = CaseId(case)
    kind = IntertwinerKind.for_case(case)
    probabilities = as_probabilities(p)
    alpha = case.intertwiner_weights(probabilities)
    z = as_shape(z)
    y = _check_edge(y, kind)
    _check_lengths(z, y, probabilities)

    tail = Fraction(0)
    if _truncates(case, kind):
        tol = config.IPK_TOLERANCE if tolerance is None else Fraction(tolerance)
        if reach is None:
            excess = certified_excess(case.law, probabilities, n, tol)
        else:
            excess = max(z[0], y[0]) + reach - z[0]
        upper = z[0] + excess
        tail = jump_total_tail(case.law, probabilities, n, excess)
    else:
        upper = z[0] + n if case.law is JumpLaw.BERNOULLI else max(z[0], y[-1])

    lhs = sum(
        (shape_kernel(case.law, z, zp, n, probabilities) * markov_intertwiner(zp, y, alpha, kind)
         for zp in _grown_shapes(z, y, kind, upper)),
        Fraction(0),
    )
    rhs = sum(
        (markov_intertwiner(z, yp, alpha, kind) * theorem_kernel(case, yp, y, n, probabilities)
         for yp in lambda_support(z, kind)),
        Fraction(0),
    )
    return IntertwiningResult(lhs=lhs, rhs=rhs, tail_bound=tail)


def core_intertwining_check(
    case: CaseId, z: Sequence[int], y: Sequence[int], n: int, p: Sequence[Fraction]
) -> tuple[Fraction, Fraction]:
    """Both sides of (P-circle Lambda)(z, y) = (Lambda Q-circle)(z, y); finite sums only."""
    case = CaseId(case)
    kind = IntertwinerKind.for_case(case)
    if _truncates(case, kind):
        raise DomainError(f"Case {case} needs a truncated sum; use intertwining_check")
    probabilities = as_probabilities(p)
    alpha = case.intertwiner_weights(probabilities)
    z = as_shape(z)
    y = _check_edge(y, kind)
    _check_lengths(z, y, probabilities)
    upper = z[0] + n if case.law is JumpLaw.BERNOULLI else max(z[0], y[-1])

    lhs = sum(
        (shape_core(case.law, z, zp, n) * lambda_kernel(zp, y, alpha, kind)
         for zp in _grown_shapes(z, y, kind, upper)),
        Fraction(0),
    )
    rhs = sum(
        (lambda_kernel(z, yp, alpha, kind) * theorem_core(case, yp, y, n, probabilities)
         for yp in lambda_support(z, kind)),
        Fraction(0),
    )
    return lhs, rhs


def _conjugate(
    case: CaseId,
    y: StateKey,
    yp: StateKey,
    n: int,
    probabilities: tuple[Fraction, ...],
    reach: int,
) -> tuple[Fraction, Fraction]:
    kind = IntertwinerKind.for_case(case)
    alpha = case.intertwiner_weights(probabilities)
    scale = Fraction(1)
    for pk in probabilities:
        scale *= (1 - pk) ** n
    edge_weight = weight_power(alpha, [-v for v in yp])

    value = Fraction(0)
    tail = Fraction(0)
    for z in pi_support(y):
        pi = pi_kernel(y, z, alpha, kind)
        if pi == 0:
            continue
        if _truncates(case, kind):
            upper = max(z[0], yp[0]) + reach
            tail += abs(pi) * schur(z, alpha) / scale * edge_weight * jump_total_tail(
                case.law, probabilities, n, upper - z[0]
            )
        else:
            upper = z[0] + n if case.law is JumpLaw.BERNOULLI else max(z[0], yp[-1])
        inner = sum(
            (shape_core(case.law, z, zp, n) * lambda_kernel(zp, yp, alpha, kind)
             for zp in _grown_shapes(z, yp, kind, upper)),
            Fraction(0),
        )
        value += pi * inner
    return value, tail


def q_core_via_conjugation(
    case: CaseId,
    y: Sequence[int],
    yp: Sequence[int],
    n: int,
    p: Sequence[Fraction],
    window: Window | None = None,
    tolerance: Fraction | None = None,
) -> ConjugationResult:
    """Q-circle(y, y') directly and as (Pi P-circle Lambda)(y, y').

    Without a window the geometric left kind grows its reach until the
    truncation bound drops below tolerance.

    Raises:
        WindowError: If the truncation bound stays above tolerance.
    """
    case = CaseId(case)
    kind = IntertwinerKind.for_case(case)
    probabilities = as_probabilities(p)
    start, end = _check_edge(y, kind), _check_edge(yp, kind)
    _check_lengths(start, end, probabilities)
    tol = config.IPK_TOLERANCE if tolerance is None else Fraction(tolerance)

    reach = window.reach if window is not None else 8
    while True:
        conjugated, tail = _conjugate(case, start, end, n, probabilities, reach)
        if tail <= tol:
            break
        if window is not None or reach >= config.IPK_MAX_REACH:
            raise WindowError(f"Conjugation tail {float(tail):.3e} above tolerance at reach {reach}", tail_bound=tail)
        reach = min(2 * reach, config.IPK_MAX_REACH)
        logger.debug(f"Growing conjugation reach for case {case} to {reach}")

    direct = theorem_core(case, start, end, n, probabilities)
    return ConjugationResult(
        direct_core=direct,
        conjugated_core=conjugated,
        tail_bound=tail,
        kernel=prefactor(case, start, end, n, probabilities) * direct,
        theorem=theorem_kernel(case, start, end, n, probabilities),
    )
