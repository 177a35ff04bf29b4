import random
from fractions import Fraction

from kmx._ground import Q, ZERO, ONE
from kmx.linalg import (
    QZ_ONE,
    QZ_ZERO,
    QZeta3,
    ZETA3,
    bareiss_det,
    invert_rational,
    leading_principal_minors,
    matrix_rank,
    nullspace,
    row_reduce,
)


def _fraction_det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def test_bareiss_matches_fraction_elimination():
    rng = random.Random(3)
    for n in range(1, 6):
        for _ in range(20):
            m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            assert bareiss_det(m) == _fraction_det(m)


def test_leading_minors():
    assert leading_principal_minors([[2, -1], [-1, 2]]) == [2, 3]


def test_inverse():
    m = [[2, -1], [-1, 2]]
    inv = invert_rational(m)
    assert inv == [[Q(2, 3), Q(1, 3)], [Q(1, 3), Q(2, 3)]]


def test_nullspace_rank():
    rows = [[Q(2), Q(-2)], [Q(-2), Q(2)]]
    ns = nullspace(rows, ZERO, ONE)
    assert len(ns) == 1
    assert ns[0][0] == ns[0][1]
    assert matrix_rank(rows, ZERO, ONE) == 1


def test_qzeta3_field():
    z = ZETA3
    assert z * z * z == QZ_ONE
    assert z * z + z + QZ_ONE == QZ_ZERO
    rng = random.Random(5)
    for _ in range(50):
        a = QZeta3(Q(rng.randint(-6, 6), rng.randint(1, 4)), Q(rng.randint(-6, 6), rng.randint(1, 4)))
        b = QZeta3(Q(rng.randint(-6, 6), rng.randint(1, 4)), Q(rng.randint(-6, 6), rng.randint(1, 4)))
        if not (b == QZ_ZERO):
            assert (a / b) * b == a


def test_row_reduce_over_qzeta3():
    rows = [[ZETA3, QZ_ONE], [QZ_ONE + ZETA3, QZ_ONE + QZ_ONE]]
    _, pivots = row_reduce(rows, QZ_ZERO, QZ_ONE)
    assert len(pivots) == 2
