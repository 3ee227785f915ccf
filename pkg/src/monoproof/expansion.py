"""Shadowing systems for 3-dimensional 0-skeletons and their quadratic forms.

A mono-unstable 0-skeleton with V vertices would have to satisfy one of
(V-1)! "shadowing systems": for each vertex i = 2..V pick some earlier
vertex j(i) < i that shadows it.  After fixing the similarity frame
(r_1 = (1,0,0), r_23 = 0) and eliminating the last vertex through the
balance equations sum_i r_i = 0, each inequality becomes

    Q_i(x) = sum_k r_ik^2 - sum_k r_ik r_j(i)k <= 0

over the n = 3V-7 free coordinates x.  Q_i is assembled here as an exact
quadratic form f(x) = x^T A x + b.x + c0 (Hessian 2A, constant in x).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from monoproof.ratcore import RatMatrix, RatVector, eval_quadratic

LinForm = tuple[Fraction, dict[int, Fraction]]  # constant + sparse coefficients


class NonPositiveCoefficient(ValueError):
    """Weight coefficients must be strictly positive."""


@dataclass(frozen=True)
class ShadowSystem:
    """One choice function j: vertex i is shadowed by vertex j(i) < i.

    ``j[i-2]`` holds j(i) for i = 2..V; j(2) = 1 is forced.  ``system_id``
    is the 0-based rank in canonical order: lexicographic over
    (j(3), ..., j(V)) with j(V) varying fastest.
    """

    V: int
    j: tuple[int, ...]
    system_id: int

    def __init__(self, V: int, j: Sequence[int]):
        j = tuple(j)
        if V < 3:
            raise ValueError("shadowing systems need V >= 3")
        if len(j) != V - 1:
            raise ValueError(f"expected {V - 1} choices j(2)..j({V}), got {len(j)}")
        if j[0] != 1:
            raise ValueError("j(2) must be 1")
        for i in range(3, V + 1):
            if not 1 <= j[i - 2] <= i - 1:
                raise ValueError(f"j({i}) = {j[i - 2]} out of range 1..{i - 1}")
        rank = 0
        for i in range(3, V + 1):
            rank = rank * (i - 1) + (j[i - 2] - 1)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "system_id", rank)

    @classmethod
    def from_choices(cls, V: int, choices: Sequence[int]) -> "ShadowSystem":
        """Build from the (j(3), ..., j(V)) part, with j(2) = 1 implicit."""
        return cls(V, (1, *choices))

    def j_of(self, i: int) -> int:
        if not 2 <= i <= self.V:
            raise ValueError(f"vertex index {i} out of range 2..{self.V}")
        return self.j[i - 2]

    @property
    def choices(self) -> tuple[int, ...]:
        return self.j[1:]

    def to_json(self) -> dict:
        return {"V": self.V, "j": list(self.j)}

    @classmethod
    def from_json(cls, doc: dict) -> "ShadowSystem":
        return cls(int(doc["V"]), tuple(int(v) for v in doc["j"]))


def enumerate_systems(V: int) -> Iterator[ShadowSystem]:
    """All (V-1)! shadowing systems in canonical order (j(V) fastest)."""
    if V < 3:
        raise ValueError("shadowing systems need V >= 3")
    for choices in itertools.product(*(range(1, i) for i in range(3, V + 1))):
        yield ShadowSystem.from_choices(V, choices)


def var_index(i: int, k: int, V: int) -> int:
    """Flat index of the free coordinate r_ik: (2,1), (2,2), then row-major
    triples for i = 3..V-1.  Fixed and eliminated coordinates are rejected."""
    if k not in (1, 2, 3):
        raise ValueError(f"coordinate k = {k} out of range 1..3")
    if i == 1 or (i == 2 and k == 3):
        raise ValueError(f"r_{i},{k} is a fixed coordinate, not a free variable")
    if i >= V:
        raise ValueError(f"r_{i},{k} is eliminated by the balance equations")
    if i == 2:
        return k - 1
    return 2 + 3 * (i - 3) + (k - 1)


def free_var_count(V: int) -> int:
    return 3 * V - 7


@dataclass(frozen=True)
class QuadraticForm:
    """f(x) = x^T A x + b.x + c0 with A symmetric; the Hessian 2A is constant."""

    A: RatMatrix
    b: RatVector
    c0: Fraction

    def __post_init__(self):
        if not self.A.is_symmetric():
            raise ValueError("quadratic part must be symmetric")
        if len(self.b) != self.A.n:
            raise ValueError("linear part has wrong length")

    @property
    def n(self) -> int:
        return self.A.n

    def evaluate(self, x: RatVector) -> Fraction:
        return eval_quadratic(self.A, self.b, self.c0, x)


def _coordinate_forms(V: int) -> dict[tuple[int, int], LinForm]:
    """Every coordinate r_ik as a linear form over the free variables:
    the fixed frame, the free variables themselves, and the eliminated
    last vertex r_Vk = -sum of the column."""
    forms: dict[tuple[int, int], LinForm] = {
        (1, 1): (Fraction(1), {}),
        (1, 2): (Fraction(0), {}),
        (1, 3): (Fraction(0), {}),
        (2, 3): (Fraction(0), {}),
    }
    for i in range(2, V):
        for k in (1, 2, 3):
            if (i, k) not in forms:
                forms[(i, k)] = (Fraction(0), {var_index(i, k, V): Fraction(1)})
    for k in (1, 2, 3):
        const = Fraction(0)
        coeffs: dict[int, Fraction] = {}
        for i in range(1, V):
            c, xs = forms[(i, k)]
            const -= c
            for idx, coef in xs.items():
                coeffs[idx] = coeffs.get(idx, Fraction(0)) - coef
        forms[(V, k)] = (const, {idx: c for idx, c in coeffs.items() if c != 0})
    return forms


def _add_product(
    A: list[list[Fraction]], b: list[Fraction], u: LinForm, v: LinForm, sign: int
) -> Fraction:
    """Accumulate sign * (u(x) * v(x)) into the A/b buckets; returns the
    constant-term contribution."""
    cu, xu = u
    cv, xv = v
    for idx, coef in xu.items():
        b[idx] += sign * cv * coef
    for idx, coef in xv.items():
        b[idx] += sign * cu * coef
    for iu, coef_u in xu.items():
        for iv, coef_v in xv.items():
            contrib = sign * coef_u * coef_v
            if iu == iv:
                A[iu][iu] += contrib
            else:
                A[iu][iv] += contrib / 2
                A[iv][iu] += contrib / 2
    return sign * cu * cv


def inequality_form(system: ShadowSystem, i: int) -> QuadraticForm:
    """The left-hand side Q_i of 'vertex i is shadowed by vertex j(i)',
    expanded over the free coordinates; the inequality is Q_i(x) <= 0."""
    if not 2 <= i <= system.V:
        raise ValueError(f"vertex index {i} out of range 2..{system.V}")
    V = system.V
    n = free_var_count(V)
    forms = _coordinate_forms(V)
    A = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    c0 = Fraction(0)
    j = system.j_of(i)
    for k in (1, 2, 3):
        c0 += _add_product(A, b, forms[(i, k)], forms[(i, k)], +1)
        c0 += _add_product(A, b, forms[(i, k)], forms[(j, k)], -1)
    return QuadraticForm(RatMatrix(A, symmetric=True), RatVector(b), c0)


def inequality_forms(system: ShadowSystem) -> list[QuadraticForm]:
    """Q_i for i = 2..V, in vertex order."""
    return [inequality_form(system, i) for i in range(2, system.V + 1)]


def _check_coefficients(system: ShadowSystem, coeffs: Sequence[int]) -> None:
    if len(coeffs) != system.V - 1:
        raise ValueError(f"expected {system.V - 1} coefficients, got {len(coeffs)}")
    for c in coeffs:
        if isinstance(c, bool) or not isinstance(c, int):
            raise NonPositiveCoefficient(f"coefficients must be positive integers, got {c!r}")
        if c <= 0:
            raise NonPositiveCoefficient(f"coefficient {c} is not positive")


def combine_forms(forms: Sequence[QuadraticForm], coeffs: Sequence[int]) -> QuadraticForm:
    """Entrywise weighted sum of quadratic forms."""
    n = forms[0].n
    A = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    c0 = Fraction(0)
    for form, c in zip(forms, coeffs):
        for r in range(n):
            row = form.A[r]
            Ar = A[r]
            for col in range(n):
                if row[col]:
                    Ar[col] += c * row[col]
        for idx, val in enumerate(form.b):
            if val:
                b[idx] += c * val
        c0 += c * form.c0
    return QuadraticForm(RatMatrix(A, symmetric=True), RatVector(b), c0)


def weighted_inequality_sum(system: ShadowSystem, coeffs: Sequence[int]) -> QuadraticForm:
    """sum_i c_i * Q_i for positive integer weights c_2..c_V.

    If some choice of weights makes this form strictly convex with a
    strictly positive minimum, the shadowing system has no solution: any
    solution would make every Q_i <= 0 and hence the sum nonpositive.
    """
    _check_coefficients(system, coeffs)
    return combine_forms(inequality_forms(system), coeffs)


def reconstruct_vertices(V: int, x: RatVector) -> list[RatVector]:
    """Full vertex vectors r_1..r_V encoded by a free-coordinate vector:
    the fixed frame, the variables, and the balance-eliminated last vertex."""
    if len(x) != free_var_count(V):
        raise ValueError(f"expected {free_var_count(V)} coordinates, got {len(x)}")
    forms = _coordinate_forms(V)
    out = []
    for i in range(1, V + 1):
        coords = []
        for k in (1, 2, 3):
            const, coeffs = forms[(i, k)]
            coords.append(const + sum((c * x[idx] for idx, c in coeffs.items()), Fraction(0)))
        out.append(RatVector(coords))
    return out
