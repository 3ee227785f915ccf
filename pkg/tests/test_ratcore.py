import random
from fractions import Fraction

import pytest

from monoproof.ratcore import (
    RatMatrix,
    RatVector,
    SingularError,
    as_rational,
    eval_quadratic,
    format_rational,
    is_positive_definite,
    parse_rational,
    solve_linear,
)


def test_parse_rational_basic():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    assert parse_rational("-6/4") == Fraction(-3, 2)
    assert parse_rational("0") == 0


@pytest.mark.parametrize("bad", ["", "1/0", "1.5", "3 / 4", "+5", "1/-2", "a", "1e3"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format_round_trip():
    rng = random.Random(11)
    for _ in range(200):
        value = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        assert parse_rational(format_rational(value)) == value


def test_format_integers_have_no_slash():
    assert format_rational(Fraction(5)) == "5"
    assert format_rational(Fraction(-12, 4)) == "-3"


def test_as_rational_rejects_float_and_bool():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


def test_vector_ops():
    u = RatVector([1, 2, 3])
    v = RatVector([Fraction(1, 2), 0, -1])
    assert (u + v) == RatVector([Fraction(3, 2), 2, 2])
    assert (u - v) == RatVector([Fraction(1, 2), 2, 4])
    assert -v == RatVector([Fraction(-1, 2), 0, 1])
    assert u.dot(v) == Fraction(1, 2) - 3
    assert u.norm_sq() == 14
    assert u.scale(Fraction(1, 3)) == RatVector([Fraction(1, 3), Fraction(2, 3), 1])
    assert RatVector.zero(3).is_zero()
    with pytest.raises(ValueError):
        u.dot(RatVector([1, 2]))


def test_cross_product_orthogonality():
    rng = random.Random(5)
    for _ in range(50):
        u = RatVector([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)])
        v = RatVector([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)])
        w = u.cross(v)
        assert w.dot(u) == 0
        assert w.dot(v) == 0


def test_matrix_shape_validation():
    with pytest.raises(ValueError):
        RatMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        RatMatrix([[1, 2], [3, 4]], symmetric=True)
    m = RatMatrix([[1, 2], [2, 5]], symmetric=True)
    assert m.is_symmetric()
    assert m.n == 2


def test_matvec():
    m = RatMatrix([[1, 2], [3, 4]])
    assert m.matvec(RatVector([1, 1])) == RatVector([3, 7])


def test_solve_linear_hand_checked():
    # 2x + y = 5, x - y = 1  ->  x = 2, y = 1
    A = RatMatrix([[2, 1], [1, -1]])
    x = solve_linear(A, RatVector([5, 1]))
    assert x == RatVector([2, 1])


def test_solve_linear_random_systems():
    """Random well-conditioned systems: check A x == b exactly."""
    rng = random.Random(42)
    for trial in range(100):
        n = rng.randint(1, 6)
        A = RatMatrix(
            [
                [Fraction(rng.randint(-20, 20), rng.randint(1, 10)) for _ in range(n)]
                for _ in range(n)
            ]
        )
        b = RatVector([Fraction(rng.randint(-20, 20), rng.randint(1, 10)) for _ in range(n)])
        try:
            x = solve_linear(A, b)
        except SingularError:
            continue
        assert A.matvec(x) == b


def test_solve_linear_singular():
    A = RatMatrix([[1, 2], [2, 4]])
    with pytest.raises(SingularError):
        solve_linear(A, RatVector([1, 1]))


def test_solve_needs_pivoting():
    # leading zero forces a row swap inside the elimination
    A = RatMatrix([[0, 1], [1, 0]])
    assert solve_linear(A, RatVector([3, 4])) == RatVector([4, 3])


def test_pd_known_cases():
    assert is_positive_definite(RatMatrix.identity(4))
    assert is_positive_definite(RatMatrix([[2, -1], [-1, 2]], symmetric=True))
    assert not is_positive_definite(RatMatrix([[1, 2], [2, 1]], symmetric=True))
    assert not is_positive_definite(RatMatrix([[0, 0], [0, 1]], symmetric=True))
    assert not is_positive_definite(RatMatrix([[-1, 0], [0, -1]], symmetric=True))


def test_pd_rejects_asymmetric():
    with pytest.raises(ValueError):
        is_positive_definite(RatMatrix([[1, 2], [0, 1]]))


def test_pd_gram_matrices():
    """G^T G + I is always positive definite; G^T G alone is not when G has
    fewer rows than columns."""
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 5)
        rows = rng.randint(1, n - 1)
        g = [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(rows)]
        gram = [
            [sum(g[k][i] * g[k][j] for k in range(rows)) for j in range(n)]
            for i in range(n)
        ]
        assert not is_positive_definite(RatMatrix(gram, symmetric=True))
        bumped = [
            [gram[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)
        ]
        assert is_positive_definite(RatMatrix(bumped, symmetric=True))


def test_eval_quadratic_matches_expansion():
    A = RatMatrix([[1, Fraction(1, 2)], [Fraction(1, 2), 3]], symmetric=True)
    b = RatVector([-2, 0])
    x = RatVector([Fraction(1, 3), Fraction(-1, 2)])
    # x^T A x + b.x + c0 by hand
    expected = (
        x[0] * x[0] + x[0] * x[1] + 3 * x[1] * x[1] - 2 * x[0] + Fraction(7)
    )
    assert eval_quadratic(A, b, Fraction(7), x) == expected
