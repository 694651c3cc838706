"""
Symmetric-function primitives.

This module provides the symmetric functions every kernel is built from:

- complete homogeneous and elementary polynomials, whole and windowed
- the two jump families w_n (negative binomial) and v_n (binomial)
- the transforms f^{(ij)} / f-hat^{(ij)} that fill the determinants of the
  transition kernels, including the one infinite series, evaluated in closed form
- Schur polynomials (Jacobi-Trudi and Gelfand-Tsetlin evaluations)
- skew tableau counts (Jacobi-Trudi determinants and direct filling counts)

Windows follow the convention h^{(ij)}_r(alpha) = h_r(alpha_{i+1}, ..., alpha_j) with
0 <= i <= j <= N; an empty window gives the indicator 1(r = 0).
"""

import logging
from collections.abc import Iterator, Sequence
from enum import StrEnum
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import config
from .exactnum import binomial, det_exact, poly_binomial
from .exceptions import DomainError, WindowError

logger = logging.getLogger(__name__)

WeightVector = tuple[Fraction, ...]
Shape = tuple[int, ...]
Levels = tuple[tuple[int, ...], ...]


class SymKind(StrEnum):
    H = "h"
    E = "e"


class Family(StrEnum):
    W = "w"
    V = "v"


class Orientation(StrEnum):
    FORWARD = "forward"
    HAT = "hat"


class RowMode(StrEnum):
    WEAK = "weak"
    STRICT = "strict"


# ============================================================================
# VALIDATION
# ============================================================================


def as_weights(values: Sequence[Fraction | int | str]) -> WeightVector:
    """Coerce to a weight vector of strictly positive rationals."""
    weights = tuple(Fraction(value) for value in values)
    if not weights:
        raise DomainError("A weight vector needs at least one entry")
    if any(weight <= 0 for weight in weights):
        raise DomainError(f"Weights must be strictly positive, got {[str(w) for w in weights]}")
    return weights


def as_shape(parts: Sequence[int]) -> Shape:
    """Coerce to a weakly decreasing integer vector."""
    shape = tuple(int(part) for part in parts)
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)):
        raise DomainError(f"Shape must be weakly decreasing, got {shape}")
    return shape


def inverse_weights(alpha: WeightVector) -> WeightVector:
    return tuple(1 / a for a in alpha)


def odds(p: Sequence[Fraction]) -> WeightVector:
    """pi_k = p_k / (1 - p_k)."""
    return tuple(Fraction(pk) / (1 - Fraction(pk)) for pk in p)


def weight_power(alpha: Sequence[Fraction], exponents: Sequence[int]) -> Fraction:
    """The monomial prod alpha_k^{e_k}; negative exponents allowed."""
    result = Fraction(1)
    for a, e in zip(alpha, exponents, strict=True):
        result *= Fraction(a) ** e
    return result


# ============================================================================
# COMPLETE / ELEMENTARY
# ============================================================================


@lru_cache(maxsize=65536)
def _h_table(variables: tuple[Fraction, ...], top: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)] + [Fraction(0)] * top
    for a in variables:
        for s in range(1, top + 1):
            table[s] += a * table[s - 1]
    return tuple(table)


@lru_cache(maxsize=65536)
def _e_table(variables: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    table = [Fraction(1)] + [Fraction(0)] * len(variables)
    for a in variables:
        for s in range(len(variables), 0, -1):
            table[s] += a * table[s - 1]
    return tuple(table)


def _complete(r: int, variables: tuple[Fraction, ...]) -> Fraction:
    if r < 0:
        return Fraction(0)
    if not variables:
        return Fraction(1 if r == 0 else 0)
    return _h_table(variables, r)[r]


def _elementary(r: int, variables: tuple[Fraction, ...]) -> Fraction:
    if r < 0 or r > len(variables):
        return Fraction(0)
    return _e_table(variables)[r]


def complete_h(r: int, alpha: Sequence[Fraction]) -> Fraction:
    """h_r(alpha); h_0 = 1 and h_r = 0 for r < 0."""
    return _complete(r, tuple(Fraction(a) for a in alpha))


def elementary_e(r: int, alpha: Sequence[Fraction]) -> Fraction:
    """e_r(alpha); e_0 = 1, and 0 for r < 0 or r > N."""
    return _elementary(r, tuple(Fraction(a) for a in alpha))


def windowed(kind: SymKind | str, r: int, i: int, j: int, alpha: Sequence[Fraction]) -> Fraction:
    """h^{(ij)}_r or e^{(ij)}_r: the symmetric function in alpha_{i+1}, ..., alpha_j.

    Raises:
        DomainError: If the window is not 0 <= i <= j <= N.
    """
    if not 0 <= i <= j <= len(alpha):
        raise DomainError(f"Window ({i}, {j}) out of range for N={len(alpha)}")
    variables = tuple(Fraction(a) for a in alpha[i:j])
    if SymKind(kind) is SymKind.H:
        return _complete(r, variables)
    return _elementary(r, variables)


def he_identity(i: int, j: int, n: int, alpha: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """Both sides of sum_r (-1)^r e^{(iN)}_r h^{(jN)}_{n-r} = h^{(ji)}_n or (-1)^n e^{(ij)}_n."""
    size = len(alpha)
    lhs = sum(
        ((-1) ** r * windowed(SymKind.E, r, i, size, alpha) * windowed(SymKind.H, n - r, j, size, alpha)
         for r in range(0, size - i + 1)),
        Fraction(0),
    )
    if j <= i:
        rhs = windowed(SymKind.H, n, j, i, alpha)
    else:
        rhs = (-1) ** n * windowed(SymKind.E, n, i, j, alpha)
    return lhs, rhs


def hg_product_coefficients(top: int, alpha: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of (sum_r h_r x^r)(sum_s (-1)^s e_s x^s) up to x^top."""
    return [
        sum(
            (complete_h(t - s, alpha) * (-1) ** s * elementary_e(s, alpha) for s in range(t + 1)),
            Fraction(0),
        )
        for t in range(top + 1)
    ]


# ============================================================================
# JUMP FAMILIES AND TRANSFORMS
# ============================================================================


def jump_basis(family: Family | str, n: int, k: int) -> Fraction:
    """w_n(k) = C(n-1+k, k) 1(k >= 0, n >= 0) or v_n(k) = C(n, k) 1(0 <= k <= n)."""
    if n < 0 or k < 0:
        return Fraction(0)
    if Family(family) is Family.V:
        return Fraction(binomial(n, k))
    if n == 0:
        # w_0 is the point mass at 0
        return Fraction(1 if k == 0 else 0)
    return Fraction(binomial(n - 1 + k, k))


def _check_convergent(window: tuple[Fraction, ...]) -> None:
    if any(a >= 1 for a in window):
        raise DomainError(
            f"Series sum_l h_l f(k+l) diverges for window weights {[str(a) for a in window]}"
        )


def forward_w_series(n: int, k: int, window: Sequence[Fraction]) -> Fraction:
    """sum_{l >= 0} h_l(window) w_n(k + l), evaluated exactly.

    For n >= 1, w_n(k + l) equals the binomial polynomial C(c + l, n - 1) with
    c = n - 1 + k whenever c + l >= 0, and
    sum_l h_l(a) C(c + l, m) = prod(1 - a)^-1 sum_u C(c, m - u) h_u(a / (1 - a)).
    Leading terms with c + l < 0 carry w = 0 but a nonzero polynomial value and
    are subtracted back out.
    """
    variables = tuple(Fraction(a) for a in window)
    _check_convergent(variables)
    if n < 0:
        return Fraction(0)
    if n == 0:
        return _complete(-k, variables)

    m = n - 1
    c = n - 1 + k
    scale = Fraction(1)
    for a in variables:
        scale /= 1 - a
    shifted = tuple(a / (1 - a) for a in variables)
    total = scale * sum(
        (poly_binomial(c, m - u) * _complete(u, shifted) for u in range(m + 1)), Fraction(0)
    )
    for ell in range(0, -c):
        total -= _complete(ell, variables) * poly_binomial(c + ell, m)
    return total


def series_by_partial_fractions(n: int, k: int, window: Sequence[Fraction]) -> Fraction:
    """The same series for pairwise-distinct window weights, via h_l = sum_m c_m a_m^l."""
    variables = tuple(Fraction(a) for a in window)
    _check_convergent(variables)
    if len(set(variables)) != len(variables):
        raise DomainError("Partial fractions need pairwise-distinct window weights")
    if n < 0:
        return Fraction(0)

    total = Fraction(0)
    degree = len(variables)
    for idx, q in enumerate(variables):
        coefficient = q ** (degree - 1)
        for other_idx, other in enumerate(variables):
            if other_idx != idx:
                coefficient /= q - other
        head = sum((q**s * jump_basis(Family.W, n, s) for s in range(0, k)), Fraction(0))
        total += coefficient * q ** (-k) * ((1 - q) ** (-n) - head)
    return total


def transform_f_partial(
    n: int, i: int, j: int, alpha: Sequence[Fraction], k: int, depth: int
) -> tuple[Fraction, Fraction]:
    """Truncate the forward w-series at l = depth and certify the tail.

    The tail is majorised term by term by t_l = C(l+d-1, d-1) rho^l w_n(k+l),
    whose ratio t_{l+1} / t_l decreases in l towards rho < 1. Majorant terms are
    added exactly until the ratio drops below 1; the rest is bounded by a
    geometric series.

    Returns:
        (partial sum, certified bound on the omitted tail)

    Raises:
        WindowError: If the majorant is still growing IPK_MAX_REACH terms past depth.
    """
    if not 1 <= i < j <= len(alpha):
        raise DomainError(f"The infinite series needs 1 <= i < j <= N, got ({i}, {j})")
    window = tuple(Fraction(a) for a in alpha[i:j])
    _check_convergent(window)

    partial = sum(
        (_complete(ell, window) * jump_basis(Family.W, n, k + ell) for ell in range(depth + 1)),
        Fraction(0),
    )
    if n <= 0:
        tail = _complete(-k, window) if n == 0 and -k > depth else Fraction(0)
        return partial, tail

    d = len(window)
    rho = max(window)

    def ratio(ell: int) -> Fraction:
        return rho * Fraction(ell + d, ell + 1) * Fraction(n + k + ell, k + ell + 1)

    # majorant terms with k + l < 0 vanish
    ell = max(depth + 1, -k)
    term = binomial(ell + d - 1, d - 1) * rho**ell * jump_basis(Family.W, n, k + ell)
    tail = Fraction(0)
    while ratio(ell) >= 1:
        if ell - depth > config.IPK_MAX_REACH:
            raise WindowError(f"Tail majorant still growing {ell - depth} terms past depth {depth}")
        tail += term
        term *= ratio(ell)
        ell += 1
    logger.debug(f"Tail majorant contracts from l={ell} (depth {depth})")
    return partial, tail + term / (1 - ratio(ell))


def transform_f(
    family: Family | str,
    orientation: Orientation | str,
    n: int,
    i: int,
    j: int,
    alpha: Sequence[Fraction],
    k: int,
) -> Fraction:
    """f^{(ij)}_alpha(k) (forward) or f-hat^{(ij)}_alpha(k) (hat) for f = w_n or v_n.

    For j <= i the finite alternating sum over e^{(ji)}; for i < j the series over
    h^{(ij)}, which is finite except for the forward w family.
    """
    family = Family(family)
    orientation = Orientation(orientation)
    size = len(alpha)
    if not (1 <= i <= size and 1 <= j <= size):
        raise DomainError(f"Matrix indices ({i}, {j}) out of range for N={size}")
    step = 1 if orientation is Orientation.FORWARD else -1

    if j <= i:
        return sum(
            ((-1) ** ell * windowed(SymKind.E, ell, j, i, alpha) * jump_basis(family, n, k + step * ell)
             for ell in range(i - j + 1)),
            Fraction(0),
        )

    if orientation is Orientation.FORWARD and family is Family.W:
        return forward_w_series(n, k, alpha[i:j])

    # every other i < j branch has finitely many nonzero terms
    if orientation is Orientation.HAT:
        low = max(0, k - n) if family is Family.V else 0
        high = k
    else:
        low = max(0, -k)
        high = n - k
    return sum(
        (windowed(SymKind.H, ell, i, j, alpha) * jump_basis(family, n, k + step * ell)
         for ell in range(low, high + 1)),
        Fraction(0),
    )


# ============================================================================
# GELFAND-TSETLIN LEVELS AND SCHUR POLYNOMIALS
# ============================================================================


def gt_levels(z: Shape) -> Iterator[Levels]:
    """Every interlacing array (x^1, ..., x^N) with top row x^N = z."""
    z = as_shape(z)

    def below(row: tuple[int, ...]) -> Iterator[Levels]:
        if len(row) == 1:
            yield (row,)
            return
        ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]
        for lower in product(*ranges):
            for rest in below(tuple(lower)):
                yield rest + (row,)

    if not z:
        return
    yield from below(z)


def gt_weight(levels: Levels, alpha: Sequence[Fraction]) -> Fraction:
    """alpha_1^{x^1_1} prod_k alpha_k^{|x^k| - |x^{k-1}|}."""
    weight = Fraction(alpha[0]) ** levels[0][0]
    for k in range(1, len(levels)):
        weight *= Fraction(alpha[k]) ** (sum(levels[k]) - sum(levels[k - 1]))
    return weight


def schur_gt(z: Shape, alpha: Sequence[Fraction]) -> Fraction:
    """s_z(alpha) as the Gelfand-Tsetlin weight sum; negative parts allowed."""
    return sum((gt_weight(levels, alpha) for levels in gt_levels(z)), Fraction(0))


def schur_jacobi_trudi(z: Shape, alpha: Sequence[Fraction]) -> Fraction:
    """s_z(alpha) = (alpha_1...alpha_N)^{z_N} det{h_{z_i - z_N - i + j}(alpha)}."""
    z = as_shape(z)
    size = len(z)
    if size != len(alpha):
        raise DomainError(f"Shape length {size} does not match N={len(alpha)}")
    shift = z[-1]
    base = [part - shift for part in z]
    matrix = [[complete_h(base[i] - i + j, alpha) for j in range(size)] for i in range(size)]
    return weight_power(alpha, [shift] * size) * det_exact(matrix)


def schur(z: Shape, alpha: Sequence[Fraction]) -> Fraction:
    """Schur polynomial s_z(alpha), extended to negative parts by translation."""
    return schur_jacobi_trudi(z, alpha)


# ============================================================================
# SKEW COUNTS
# ============================================================================


def _check_skew(lam: Shape, mu: Shape) -> tuple[Shape, Shape]:
    lam, mu = as_shape(lam), as_shape(mu)
    if len(lam) != len(mu):
        raise DomainError(f"Shapes {lam} and {mu} have different lengths")
    if any(m > part for part, m in zip(lam, mu)):
        raise DomainError(f"{mu} is not contained in {lam}")
    return lam, mu


def skew_count(lam: Shape, mu: Shape, k: int, rowmode: RowMode | str) -> int:
    """Jacobi-Trudi count of fillings of lam/mu with entries in 1..k.

    weak: det{w_k(lam_i - mu_j - i + j)}, rows weak and columns strict.
    strict: det{v_k(lam_i - mu_j - i + j)}, rows strict and columns weak.
    """
    lam, mu = _check_skew(lam, mu)
    family = Family.W if RowMode(rowmode) is RowMode.WEAK else Family.V
    size = len(lam)
    matrix = [[jump_basis(family, k, lam[i] - mu[j] - i + j) for j in range(size)] for i in range(size)]
    value = det_exact(matrix)
    return int(value)


def enumerate_skew_fillings(lam: Shape, mu: Shape, k: int, rowmode: RowMode | str) -> int:
    """Count the fillings of lam/mu directly, cell by cell."""
    lam, mu = _check_skew(lam, mu)
    strict_rows = RowMode(rowmode) is RowMode.STRICT
    cells = [(r, c) for r in range(len(lam)) for c in range(mu[r], lam[r])]
    filling: dict[tuple[int, int], int] = {}

    def count(index: int) -> int:
        if index == len(cells):
            return 1
        r, c = cells[index]
        low = 1
        left = filling.get((r, c - 1))
        if left is not None:
            low = max(low, left + 1 if strict_rows else left)
        up = filling.get((r - 1, c))
        if up is not None:
            low = max(low, up if strict_rows else up + 1)
        total = 0
        for value in range(low, k + 1):
            filling[(r, c)] = value
            total += count(index + 1)
        filling.pop((r, c), None)
        return total

    return count(0)
