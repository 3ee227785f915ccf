"""Exact rational vectors, symmetric matrices, linear solving and PD testing.

Every value in this package is a ``fractions.Fraction`` (arbitrary precision,
always in lowest terms, positive denominator).  Nothing here ever rounds:
elimination is done fraction-free over the integers after clearing
denominators, so results are exact by construction.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?")


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse the wire format "p/q" (or "p" when q=1), minus sign on p only."""
    if not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    """Inverse of parse_rational; str(Fraction) already emits "p/q" / "p"."""
    return str(value)


class SingularError(ValueError):
    """Raised when elimination hits an exactly rank-deficient column."""

    def __init__(self, pivot_index: int):
        super().__init__(f"matrix is singular (no pivot in column {pivot_index})")
        self.pivot_index = pivot_index


@dataclass(frozen=True)
class RatVector:
    """Immutable fixed-length vector of rationals."""

    entries: tuple[Fraction, ...]

    def __init__(self, entries: Iterable[RationalLike]):
        object.__setattr__(self, "entries", tuple(as_rational(e) for e in entries))

    @classmethod
    def zero(cls, n: int) -> "RatVector":
        return cls([0] * n)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __add__(self, other: "RatVector") -> "RatVector":
        self._check_len(other)
        return RatVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "RatVector") -> "RatVector":
        self._check_len(other)
        return RatVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "RatVector":
        return RatVector(-a for a in self.entries)

    def scale(self, factor: RationalLike) -> "RatVector":
        f = as_rational(factor)
        return RatVector(f * a for a in self.entries)

    def dot(self, other: "RatVector") -> Fraction:
        self._check_len(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def norm_sq(self) -> Fraction:
        return self.dot(self)

    def cross(self, other: "RatVector") -> "RatVector":
        if len(self) != 3 or len(other) != 3:
            raise ValueError("cross product requires 3-dimensional vectors")
        a, b = self.entries, other.entries
        return RatVector(
            (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
        )

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def _check_len(self, other: "RatVector") -> None:
        if len(self) != len(other):
            raise ValueError(f"length mismatch: {len(self)} vs {len(other)}")


@dataclass(frozen=True)
class RatMatrix:
    """Immutable square matrix of rationals, optionally tagged symmetric."""

    entries: tuple[tuple[Fraction, ...], ...]
    symmetric: bool = False

    def __init__(self, rows: Iterable[Iterable[RationalLike]], symmetric: bool = False):
        grid = tuple(tuple(as_rational(e) for e in row) for row in rows)
        n = len(grid)
        if any(len(row) != n for row in grid):
            raise ValueError("matrix must be square")
        if symmetric:
            for i in range(n):
                for j in range(i):
                    if grid[i][j] != grid[j][i]:
                        raise ValueError(f"symmetric flag set but entry ({i},{j}) != ({j},{i})")
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "symmetric", symmetric)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], symmetric=True)

    @classmethod
    def zeros(cls, n: int) -> "RatMatrix":
        return cls([[0] * n for _ in range(n)], symmetric=True)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def row(self, i: int) -> RatVector:
        return RatVector(self.entries[i])

    def matvec(self, x: RatVector) -> RatVector:
        if len(x) != self.n:
            raise ValueError(f"dimension mismatch: matrix {self.n}, vector {len(x)}")
        return RatVector(
            sum((a * b for a, b in zip(row, x.entries)), Fraction(0)) for row in self.entries
        )

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return RatMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            symmetric=self.symmetric and other.symmetric,
        )

    def scale(self, factor: RationalLike) -> "RatMatrix":
        f = as_rational(factor)
        return RatMatrix([[f * e for e in row] for row in self.entries], symmetric=self.symmetric)

    def is_symmetric(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.n) for j in range(i)
        )


def _clear_row_denominators(row: Sequence[Fraction]) -> list[int]:
    # scaling a whole row by a positive integer preserves the solution set
    scale = math.lcm(*(e.denominator for e in row)) if row else 1
    return [int(e * scale) for e in row]


def _bareiss_forward(rows: list[list[int]], width: int) -> None:
    """Fraction-free elimination in place; raises SingularError on rank deficiency.

    ``rows`` is n x width with width >= n; columns beyond n ride along (RHS).
    Divisions are exact (Bareiss), and remain exact under row swaps.
    """
    n = len(rows)
    prev = 1
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if rows[r][k] != 0), None)
        if pivot_row is None:
            raise SingularError(k)
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            rkk = rows[k][k]
            row_i = rows[i]
            row_k = rows[k]
            for j in range(k, width):
                row_i[j] = (rkk * row_i[j] - rik * row_k[j]) // prev
        prev = rows[k][k]


def _back_substitute(aug: list[list[int]]) -> list[Fraction]:
    """Exact back substitution on an n x (n+1) upper-triangular system."""
    n = len(aug)
    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x


def solve_linear(A: RatMatrix, b: RatVector) -> RatVector:
    """Solve A x = b exactly; raises SingularError on exact rank deficiency."""
    n = A.n
    if len(b) != n:
        raise ValueError(f"dimension mismatch: matrix {n}, rhs {len(b)}")
    aug = [_clear_row_denominators(list(A[i]) + [b[i]]) for i in range(n)]
    _bareiss_forward(aug, n + 1)
    return RatVector(_back_substitute(aug))


def is_positive_definite(A: RatMatrix) -> bool:
    """Exact PD test: all leading principal minors positive (Sylvester).

    Rejects non-symmetric input.  Uses Bareiss elimination on the
    denominator-cleared matrix, whose diagonal holds exactly those minors;
    scaling the whole matrix by a positive integer preserves definiteness.
    """
    if not A.is_symmetric():
        raise ValueError("positive definiteness test requires a symmetric matrix")
    n = A.n
    if n == 0:
        return True
    scale = math.lcm(*(e.denominator for row in A.entries for e in row))
    m = [[int(e * scale) for e in row] for row in A.entries]
    prev = 1
    for k in range(n):
        if m[k][k] <= 0:
            # zero or negative leading minor: not PD either way
            return False
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return True


def eval_quadratic(A: RatMatrix, b: RatVector, c0: Fraction, x: RatVector) -> Fraction:
    """Evaluate x^T A x + b.x + c0 exactly."""
    if len(x) != A.n or len(b) != A.n:
        raise ValueError("dimension mismatch in quadratic evaluation")
    return x.dot(A.matvec(x)) + b.dot(x) + c0
