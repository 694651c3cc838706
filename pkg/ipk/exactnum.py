"""
Exact rational scalars and determinants.

Every kernel value in ipk is a ``Fraction``. Determinants are evaluated with
fraction-free Bareiss elimination: each row is scaled to integers by the lcm of
its denominators, the integer determinant is computed exactly, and the row
scales are divided out at the end.
"""

import math
from collections.abc import Sequence
from fractions import Fraction
from itertools import permutations

from .exceptions import DimensionError, DomainError

Rational = Fraction
RationalMatrix = Sequence[Sequence[Fraction | int]]


# ============================================================================
# SCALARS
# ============================================================================


def binomial(n: int, k: int) -> int:
    """C(n, k) for 0 <= k <= n, and 0 outside that support (including n < 0)."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def poly_binomial(x: int, k: int) -> Fraction:
    """The binomial polynomial x(x-1)...(x-k+1)/k!, defined for every integer x."""
    if k < 0:
        return Fraction(0)
    numerator = 1
    for i in range(k):
        numerator *= x - i
    return Fraction(numerator, math.factorial(k))


def parse_rational(text: str) -> Fraction:
    """Parse "a/b" or "a" into an exact rational."""
    cleaned = text.strip()
    if not cleaned or any(ch not in "0123456789-/+" for ch in cleaned):
        raise DomainError(f"Not a rational literal: {text!r}")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"Not a rational literal: {text!r}") from exc


def format_rational(value: Fraction | int) -> str:
    """Serialize as "a/b", or "a" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ============================================================================
# DETERMINANTS
# ============================================================================


def _check_square(m: RationalMatrix) -> int:
    size = len(m)
    for row in m:
        if len(row) != size:
            raise DimensionError(
                f"Determinant needs a square matrix, got {size} rows with a row of length {len(row)}",
                rows=size,
                cols=len(row),
            )
    return size


def _integer_bareiss(rows: list[list[int]]) -> int:
    size = len(rows)
    sign = 1
    previous = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            pivot = next((r for r in range(k + 1, size) if rows[r][k] != 0), None)
            if pivot is None:
                return 0
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                # exact division: Sylvester's identity
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // previous
        previous = rows[k][k]
    return sign * rows[size - 1][size - 1]


def det_exact(m: RationalMatrix) -> Fraction:
    """Exact determinant of a square rational matrix; the 0x0 determinant is 1."""
    size = _check_square(m)
    if size == 0:
        return Fraction(1)

    scale = 1
    rows: list[list[int]] = []
    for row in m:
        entries = [Fraction(value) for value in row]
        lcm = math.lcm(*(entry.denominator for entry in entries))
        scale *= lcm
        rows.append([entry.numerator * (lcm // entry.denominator) for entry in entries])

    return Fraction(_integer_bareiss(rows), scale)


def cofactor_det(m: RationalMatrix) -> Fraction:
    """Leibniz expansion; only meant as an independent oracle for small matrices."""
    size = _check_square(m)
    total = Fraction(0)
    for perm in permutations(range(size)):
        inversions = sum(1 for a in range(size) for b in range(a + 1, size) if perm[a] > perm[b])
        term = Fraction(-1 if inversions % 2 else 1)
        for row, col in enumerate(perm):
            term *= m[row][col]
            if term == 0:
                break
        total += term
    return total
