"""
The four discrete-time particle systems and their transition kernels.

Each case couples a jump law (geometric or Bernoulli) with an interaction
(pushing or blocking) and a chamber:

    case | law       | interaction | chamber         | recursion
    -----+-----------+-------------+-----------------+-----------------------------------------
    A    | geometric | pushing     | weakly incr.    | max(Y_k(n-1), Y_{k-1}(n)) + xi(k,n)
    B    | Bernoulli | blocking    | weakly decr.    | min(Y_k(n-1) + xi(k,n), Y_{k-1}(n))
    C    | geometric | blocking    | weakly decr.    | min(Y_k(n-1) + xi(k,n), Y_{k-1}(n-1))
    D    | Bernoulli | pushing     | weakly incr.    | max(Y_k(n-1) + xi(k,n), Y_{k-1}(n))

Kernels are computed two independent ways: an oracle that integrates the
innovations out coordinate by coordinate, and the closed determinantal formula.
"""

import logging
import math
from collections import defaultdict
from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from itertools import product

import numpy as np

from . import config
from .exactnum import det_exact
from .exceptions import ChamberError, DimensionError, DomainError, SupportError, WindowError
from .symfun import (
    Family,
    Orientation,
    WeightVector,
    as_shape,
    inverse_weights,
    jump_basis,
    odds,
    schur,
    transform_f,
    weight_power,
)

logger = logging.getLogger(__name__)

StateKey = tuple[int, ...]


class Chamber(StrEnum):
    W = "W"  # z_N <= ... <= z_1
    W_HAT = "W_hat"  # z_1 <= ... <= z_N

    def contains(self, values: Sequence[int]) -> bool:
        pairs = zip(values, values[1:])
        if self is Chamber.W:
            return all(a >= b for a, b in pairs)
        return all(a <= b for a, b in pairs)


class JumpLaw(StrEnum):
    GEOMETRIC = "geometric"
    BERNOULLI = "bernoulli"


class Interaction(StrEnum):
    PUSHING = "pushing"
    BLOCKING = "blocking"


class Edge(StrEnum):
    LEDGE = "ledge"
    REDGE = "redge"


class CaseId(StrEnum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"

    @property
    def law(self) -> JumpLaw:
        return JumpLaw.GEOMETRIC if self in (CaseId.A, CaseId.C) else JumpLaw.BERNOULLI

    @property
    def interaction(self) -> Interaction:
        return Interaction.PUSHING if self in (CaseId.A, CaseId.D) else Interaction.BLOCKING

    @property
    def chamber(self) -> Chamber:
        return Chamber.W_HAT if self in (CaseId.A, CaseId.D) else Chamber.W

    @property
    def family(self) -> Family:
        return Family.W if self.law is JumpLaw.GEOMETRIC else Family.V

    @property
    def orientation(self) -> Orientation:
        return Orientation.HAT if self.chamber is Chamber.W_HAT else Orientation.FORWARD

    @property
    def edge(self) -> Edge:
        """Tableau edge that reproduces the particle positions."""
        return Edge.REDGE if self.chamber is Chamber.W_HAT else Edge.LEDGE

    def prefactor_base(self, p: Sequence[Fraction]) -> WeightVector:
        """theta: p for the geometric cases, pi for the Bernoulli ones."""
        if self.law is JumpLaw.GEOMETRIC:
            return tuple(Fraction(pk) for pk in p)
        return odds(p)

    def theorem_weights(self, p: Sequence[Fraction]) -> WeightVector:
        """p^-1 for A, pi for B, p for C, pi^-1 for D."""
        theta = self.prefactor_base(p)
        return inverse_weights(theta) if self.orientation is Orientation.HAT else theta

    def intertwiner_weights(self, p: Sequence[Fraction]) -> WeightVector:
        return self.prefactor_base(p)


@dataclass(frozen=True)
class OrderedState:
    """An integer N-vector tagged with the chamber it must lie in."""

    values: StateKey
    chamber: Chamber

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not self.values:
            raise DomainError("A state needs at least one particle")
        if not self.chamber.contains(self.values):
            raise ChamberError(f"{self.values} is not in chamber {self.chamber}", values=self.values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class InnovationGrid:
    """xi(k, t) for particles k = 1..N (rows) and times t = 1..n (columns)."""

    xi: tuple[tuple[int, ...], ...]
    law: JumpLaw

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.xi)
        object.__setattr__(self, "xi", rows)
        if not rows:
            raise DimensionError("An innovation grid needs at least one particle row")
        width = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise DimensionError("Innovation grid rows differ in length", rows=len(rows), cols=len(row))
        for row in rows:
            check_support(self.law, row)

    @property
    def particles(self) -> int:
        return len(self.xi)

    @property
    def steps(self) -> int:
        return len(self.xi[0])

    def column(self, t: int) -> tuple[int, ...]:
        """Innovations at time t (1-based)."""
        return tuple(row[t - 1] for row in self.xi)


@dataclass(frozen=True)
class Window:
    """Truncation box: a state y' is kept iff max(y') <= max(y0) + reach."""

    reach: int

    def limit(self, y: Sequence[int]) -> int:
        return max(y) + self.reach


@dataclass
class SparseKernel:
    """Finitely supported row of a kernel, with the mass left outside its window."""

    support: dict[StateKey, Fraction]
    window: Window | None = None
    tail_bound: Fraction = field(default_factory=Fraction)

    def __getitem__(self, state: Sequence[int]) -> Fraction:
        return self.support.get(tuple(state), Fraction(0))

    def total(self) -> Fraction:
        return sum(self.support.values(), Fraction(0))


@dataclass(frozen=True)
class MCEstimate:
    estimate: Fraction
    stderr_bound: Fraction
    hits: int
    reps: int


# ============================================================================
# VALIDATION HELPERS
# ============================================================================


def as_probabilities(p: Sequence[Fraction | int | str]) -> WeightVector:
    probabilities = tuple(Fraction(pk) for pk in p)
    if not probabilities:
        raise DomainError("At least one jump parameter is required")
    for pk in probabilities:
        if not 0 < pk < 1:
            raise DomainError(f"Jump parameters must lie in (0, 1), got {pk}")
    return probabilities


def check_support(law: JumpLaw, values: Sequence[int]) -> None:
    allowed = {0, 1} if law is JumpLaw.BERNOULLI else None
    for value in values:
        if value < 0 or (allowed is not None and value not in allowed):
            raise SupportError(f"Innovation {value} is outside the {law} support")


def seed_sequence(seed: int, spawn_key: tuple[int, ...] = ()) -> np.random.SeedSequence:
    """SeedSequence entropy must be a non-negative integer."""
    if seed < 0:
        raise DomainError(f"Seeds must be non-negative, got {seed}")
    return np.random.SeedSequence(seed, spawn_key=spawn_key)


def _state_values(case: CaseId, y: OrderedState | Sequence[int]) -> StateKey:
    if isinstance(y, OrderedState):
        if y.chamber is not case.chamber:
            raise ChamberError(f"Case {case} lives in {case.chamber}, got a {y.chamber} state", y.values)
        return y.values
    return OrderedState(tuple(y), case.chamber).values


def _check_dimensions(y: Sequence[int], p: Sequence[Fraction]) -> None:
    if len(y) != len(p):
        raise DimensionError(f"State has {len(y)} particles but {len(p)} jump parameters", rows=len(y), cols=len(p))


# ============================================================================
# RECURSIONS AND SAMPLING
# ============================================================================


def _step_values(case: CaseId, y: StateKey, xi: Sequence[int]) -> StateKey:
    new: list[int] = []
    for k, (old, jump) in enumerate(zip(y, xi)):
        if case is CaseId.A:
            value = (old if k == 0 else max(old, new[k - 1])) + jump
        elif case is CaseId.B:
            value = old + jump if k == 0 else min(old + jump, new[k - 1])
        elif case is CaseId.C:
            # reads the neighbour's position before this step
            value = old + jump if k == 0 else min(old + jump, y[k - 1])
        else:
            value = old + jump if k == 0 else max(old + jump, new[k - 1])
        new.append(value)
    return tuple(new)


def step_case(case: CaseId, y: OrderedState | Sequence[int], xi_col: Sequence[int]) -> OrderedState:
    """Apply one synchronous step of the case's recursion, k = 1 first."""
    case = CaseId(case)
    values = _state_values(case, y)
    if len(xi_col) != len(values):
        raise DimensionError("Innovation column length differs from particle count", len(values), len(xi_col))
    check_support(case.law, xi_col)
    return OrderedState(_step_values(case, values, xi_col), case.chamber)


def run_grid(case: CaseId, grid: InnovationGrid, y0: Sequence[int] | None = None) -> list[OrderedState]:
    """The full recursion path driven by a fixed innovation grid, from y0 (default zero)."""
    case = CaseId(case)
    if grid.law is not case.law:
        raise SupportError(f"Case {case} needs {case.law} innovations, got {grid.law}")
    start = tuple(y0) if y0 is not None else (0,) * grid.particles
    path = [OrderedState(start, case.chamber)]
    for t in range(1, grid.steps + 1):
        path.append(step_case(case, path[-1], grid.column(t)))
    return path


def _draw_column(case: CaseId, rng: np.random.Generator, p_float: np.ndarray) -> list[int]:
    if case.law is JumpLaw.GEOMETRIC:
        # numpy counts trials up to the first success; P(xi = m) = (1 - p) p^m
        draws = rng.geometric(1.0 - p_float) - 1
    else:
        draws = rng.binomial(1, p_float)
    return [int(v) for v in draws]


def sample_path(
    case: CaseId, y0: OrderedState | Sequence[int], n: int, p: Sequence[Fraction], seed: int
) -> list[OrderedState]:
    """Simulate n steps from y0; deterministic in seed."""
    case = CaseId(case)
    values = _state_values(case, y0)
    probabilities = as_probabilities(p)
    _check_dimensions(values, probabilities)
    rng = np.random.default_rng(seed_sequence(seed))
    p_float = np.array([float(pk) for pk in probabilities])
    path = [OrderedState(values, case.chamber)]
    for _ in range(n):
        values = _step_values(case, values, _draw_column(case, rng, p_float))
        path.append(OrderedState(values, case.chamber))
    return path


# ============================================================================
# ORACLE KERNELS
# ============================================================================


def _sweep(
    case: CaseId, distribution: dict[StateKey, Fraction], k: int, p: Fraction, limit: int
) -> dict[StateKey, Fraction]:
    """Integrate out xi(k) for every state at once, dropping values above limit."""
    result: dict[StateKey, Fraction] = defaultdict(Fraction)
    if case.law is JumpLaw.BERNOULLI:
        for state, mass in distribution.items():
            for jump, weight in ((0, 1 - p), (1, p)):
                value = state[k] + jump
                if k > 0:
                    value = min(value, state[k - 1]) if case is CaseId.B else max(value, state[k - 1])
                if value <= limit:
                    result[state[:k] + (value,) + state[k + 1:]] += mass * weight
        return dict(result)

    # geometric: group by the untouched coordinates, then one pass per group with
    # S(v) = p S(v - 1) + M(v), M(v) the mass whose move starts at v
    groups: dict[StateKey, dict[int, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    for state, mass in distribution.items():
        base = state[k] if case is CaseId.C or k == 0 else max(state[k], state[k - 1])
        groups[state[:k] + state[k + 1:]][base] += mass
    for context, bases in groups.items():
        # case C clamps at the old neighbour, which every larger innovation lands on
        cap = context[k - 1] if case is CaseId.C and k > 0 else None
        top = limit if cap is None else cap
        accumulated = Fraction(0)
        for value in range(min(bases), top + 1):
            accumulated = p * accumulated + bases.get(value, 0)
            weight = accumulated if value == cap else (1 - p) * accumulated
            if weight:
                result[context[:k] + (value,) + context[k:]] += weight
    return dict(result)


def _advance(
    case: CaseId, distribution: dict[StateKey, Fraction], p: WeightVector, limit: int
) -> dict[StateKey, Fraction]:
    # case C reads the old neighbour, so its coordinates are swept from the right
    order = range(len(p) - 1, -1, -1) if case is CaseId.C else range(len(p))
    for k in order:
        distribution = _sweep(case, distribution, k, p[k], limit)
    return distribution


def n_step_kernel(
    case: CaseId,
    y: OrderedState | Sequence[int],
    n: int,
    p: Sequence[Fraction],
    window: Window | None = None,
) -> SparseKernel:
    """Exact n-fold composition of the one-step oracle inside a window.

    Coordinates never decrease, so mass pushed past the window never returns and
    tail_bound = 1 - sum(support) is exact. Without a window, Bernoulli cases use
    the full reachable box and geometric cases grow a certified window.
    """
    case = CaseId(case)
    start = _state_values(case, y)
    probabilities = as_probabilities(p)
    _check_dimensions(start, probabilities)
    if n < 0:
        raise DomainError(f"Number of steps must be non-negative, got {n}")
    if window is None:
        if case.law is JumpLaw.GEOMETRIC:
            return certified_n_step_kernel(case, start, n, probabilities)
        window = Window(n)

    limit = window.limit(start)
    distribution: dict[StateKey, Fraction] = {start: Fraction(1)}
    for _ in range(n):
        distribution = _advance(case, distribution, probabilities, limit)
    support = {state: mass for state, mass in distribution.items() if mass != 0}
    kernel = SparseKernel(support=support, window=window, tail_bound=Fraction(0))
    kernel.tail_bound = 1 - kernel.total()
    logger.debug(f"Case {case} n={n} reach={window.reach}: {len(support)} states, tail {float(kernel.tail_bound):.3e}")
    return kernel


def one_step_kernel(
    case: CaseId, y: OrderedState | Sequence[int], p: Sequence[Fraction], window: Window | None = None
) -> SparseKernel:
    """Exact law of Y(1) given Y(0) = y."""
    return n_step_kernel(case, y, 1, p, window)


def certified_n_step_kernel(
    case: CaseId,
    y: OrderedState | Sequence[int],
    n: int,
    p: Sequence[Fraction],
    tolerance: Fraction | None = None,
    start_reach: int = 8,
) -> SparseKernel:
    """Grow the window until the exact dropped mass is at most tolerance.

    Raises:
        WindowError: If IPK_MAX_REACH is reached first.
    """
    case = CaseId(case)
    tol = config.IPK_TOLERANCE if tolerance is None else Fraction(tolerance)
    if case.law is JumpLaw.BERNOULLI:
        return n_step_kernel(case, y, n, p, Window(max(n, 0)))

    reach = max(start_reach, n, 1)
    while True:
        kernel = n_step_kernel(case, y, n, p, Window(reach))
        if kernel.tail_bound <= tol:
            return kernel
        if reach >= config.IPK_MAX_REACH:
            raise WindowError(
                f"Tail mass {float(kernel.tail_bound):.3e} still above tolerance at reach {reach}",
                tail_bound=kernel.tail_bound,
            )
        reach = min(2 * reach, config.IPK_MAX_REACH)
        logger.debug(f"Growing window for case {case} to reach {reach}")


def _box_states(low: Sequence[int], high: Sequence[int], chamber: Chamber) -> Iterator[StateKey]:
    ranges = [range(a, b + 1) for a, b in zip(low, high)]
    for values in product(*ranges):
        if chamber.contains(values):
            yield tuple(values)


def reachable_states(
    case: CaseId, y: OrderedState | Sequence[int], n: int, window: Window | None = None
) -> list[StateKey]:
    """Chamber states y' >= y inside the window (Bernoulli: also y' <= y + n)."""
    case = CaseId(case)
    start = _state_values(case, y)
    if case.law is JumpLaw.BERNOULLI:
        high = [v + n for v in start]
        if window is not None:
            high = [min(h, window.limit(start)) for h in high]
    else:
        if window is None:
            raise DomainError("Geometric cases need a window to bound the reachable states")
        high = [window.limit(start)] * len(start)
    return list(_box_states(start, high, case.chamber))


def innovation_probability(law: JumpLaw | CaseId, grid: InnovationGrid, p: Sequence[Fraction]) -> Fraction:
    """Exact probability of a full innovation grid."""
    jump_law = law.law if isinstance(law, CaseId) else JumpLaw(law)
    probabilities = as_probabilities(p)
    if len(probabilities) != grid.particles:
        raise DimensionError("Grid rows differ from jump parameters", grid.particles, len(probabilities))
    check_support(jump_law, [v for row in grid.xi for v in row])
    result = Fraction(1)
    for pk, row in zip(probabilities, grid.xi):
        for value in row:
            if jump_law is JumpLaw.GEOMETRIC:
                result *= (1 - pk) * pk**value
            else:
                result *= pk if value else 1 - pk
    return result


# ============================================================================
# DETERMINANTAL KERNELS
# ============================================================================


def prefactor(
    case: CaseId, y: Sequence[int], yp: Sequence[int], n: int, p: Sequence[Fraction]
) -> Fraction:
    """prod_k (1 - p_k)^n theta_k^{y'_k - y_k}."""
    case = CaseId(case)
    probabilities = as_probabilities(p)
    scale = Fraction(1)
    for pk in probabilities:
        scale *= (1 - pk) ** n
    displacement = [b - a for a, b in zip(y, yp, strict=True)]
    return scale * weight_power(case.prefactor_base(probabilities), displacement)


def theorem_core(
    case: CaseId, y: OrderedState | Sequence[int], yp: OrderedState | Sequence[int], n: int, p: Sequence[Fraction]
) -> Fraction:
    """det{f^{(ij)}(y'_i - y_j -/+ (i - j))}: the determinant without its prefactor."""
    case = CaseId(case)
    start, end = _state_values(case, y), _state_values(case, yp)
    probabilities = as_probabilities(p)
    _check_dimensions(start, probabilities)
    _check_dimensions(end, probabilities)
    weights = case.theorem_weights(probabilities)
    sign = 1 if case.orientation is Orientation.HAT else -1
    size = len(start)
    matrix = [
        [
            transform_f(case.family, case.orientation, n, i + 1, j + 1, weights, end[i] - start[j] + sign * (i - j))
            for j in range(size)
        ]
        for i in range(size)
    ]
    return det_exact(matrix)


def theorem_kernel(
    case: CaseId, y: OrderedState | Sequence[int], yp: OrderedState | Sequence[int], n: int, p: Sequence[Fraction]
) -> Fraction:
    """Q_n(y, y') from the determinantal formula."""
    case = CaseId(case)
    start, end = _state_values(case, y), _state_values(case, yp)
    return prefactor(case, start, end, n, p) * theorem_core(case, start, end, n, p)


def compose_theorem_kernel(
    case: CaseId, y: OrderedState | Sequence[int], yp: OrderedState | Sequence[int], p: Sequence[Fraction]
) -> Fraction:
    """sum_{y''} Q_1(y, y'') Q_1(y'', y'), over the finite box y <= y'' <= y'."""
    case = CaseId(case)
    start, end = _state_values(case, y), _state_values(case, yp)
    if any(b < a for a, b in zip(start, end)):
        return Fraction(0)
    return sum(
        (theorem_kernel(case, start, mid, 1, p) * theorem_kernel(case, mid, end, 1, p)
         for mid in _box_states(start, end, case.chamber)),
        Fraction(0),
    )


def shape_core(law: JumpLaw | str, z: Sequence[int], zp: Sequence[int], n: int) -> Fraction:
    """P-circle: det{w_n(z'_i - z_j - i + j)} or det{v_n(...)}."""
    family = Family.W if JumpLaw(law) is JumpLaw.GEOMETRIC else Family.V
    z, zp = as_shape(z), as_shape(zp)
    size = len(z)
    matrix = [[jump_basis(family, n, zp[i] - z[j] - i + j) for j in range(size)] for i in range(size)]
    return det_exact(matrix)


def shape_kernel(
    law: JumpLaw | str, z: Sequence[int], zp: Sequence[int], n: int, p: Sequence[Fraction]
) -> Fraction:
    """Transition probability of the shape process: c (s_{z'} / s_z) P-circle."""
    law = JumpLaw(law)
    probabilities = as_probabilities(p)
    z, zp = as_shape(z), as_shape(zp)
    _check_dimensions(z, probabilities)
    _check_dimensions(zp, probabilities)
    alpha = tuple(probabilities) if law is JumpLaw.GEOMETRIC else odds(probabilities)
    scale = Fraction(1)
    for pk in probabilities:
        scale *= (1 - pk) ** n
    core = shape_core(law, z, zp, n)
    if core == 0:
        return Fraction(0)
    return scale * schur(zp, alpha) / schur(z, alpha) * core


# ============================================================================
# MONTE CARLO
# ============================================================================


def _count_block(
    case: CaseId, start: StateKey, target: StateKey, n: int, p_float: np.ndarray, seed: int, replicas: range
) -> int:
    hits = 0
    for r in replicas:
        rng = np.random.default_rng(seed_sequence(seed, (r,)))
        values = start
        for _ in range(n):
            values = _step_values(case, values, _draw_column(case, rng, p_float))
        if values == target:
            hits += 1
    return hits


def mc_estimate(
    case: CaseId,
    y: OrderedState | Sequence[int],
    yp: OrderedState | Sequence[int],
    n: int,
    p: Sequence[Fraction],
    reps: int,
    seed: int,
    threads: int | None = None,
) -> MCEstimate:
    """Empirical frequency of Y(n) = y' over independent replicas.

    Replica r draws from SeedSequence(seed, spawn_key=(r,)), so the result does not
    depend on how blocks are scheduled across threads.
    """
    case = CaseId(case)
    start, target = _state_values(case, y), _state_values(case, yp)
    probabilities = as_probabilities(p)
    _check_dimensions(start, probabilities)
    seed_sequence(seed)
    if reps < 1:
        raise DomainError(f"Monte Carlo needs at least one replica, got {reps}")

    p_float = np.array([float(pk) for pk in probabilities])
    block = config.IPK_MC_BLOCK
    blocks = [range(lo, min(lo + block, reps)) for lo in range(0, reps, block)]
    workers = max(1, min(threads or config.IPK_THREADS, len(blocks)))
    logger.debug(f"Running {reps} replicas in {len(blocks)} blocks on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        hits = sum(executor.map(lambda b: _count_block(case, start, target, n, p_float, seed, b), blocks))

    return MCEstimate(
        estimate=Fraction(hits, reps),
        stderr_bound=Fraction(1, 2 * math.isqrt(reps)),
        hits=hits,
        reps=reps,
    )
