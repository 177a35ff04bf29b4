"""Exact linear algebra over pluggable fields.

Determinants of integer matrices use fraction-free Bareiss elimination;
everything else is plain Gaussian elimination, generic over any field-like
type supporting +, -, *, / and == 0 (ground rationals, GaussianRational,
QZeta3).
"""

from __future__ import annotations

from itertools import combinations

from ._ground import Q, ZERO, ONE, as_rat
from .errors import InternalError


def bareiss_det(rows) -> int:
    """Exact determinant of an integer matrix, fraction-free."""
    n = len(rows)
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def principal_minor(rows, idx) -> int:
    """Determinant of the principal submatrix on the index set ``idx``."""
    return bareiss_det([[rows[i][j] for j in idx] for i in idx])


def all_principal_minors(rows):
    """Yield (index tuple, determinant) over every nonempty principal submatrix."""
    n = len(rows)
    for r in range(1, n + 1):
        for idx in combinations(range(n), r):
            yield idx, principal_minor(rows, idx)


def leading_principal_minors(rows):
    """Leading principal minors of orders 1..n, exact integers."""
    n = len(rows)
    return [principal_minor(rows, tuple(range(k))) for k in range(1, n + 1)]


def invert_rational(rows):
    """Exact inverse of a square matrix with rational entries."""
    n = len(rows)
    a = [[as_rat(x) for x in row] + [ONE if i == j else ZERO for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise InternalError("singular matrix passed to invert_rational")
        a[col], a[piv] = a[piv], a[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve_rational(rows, rhs):
    """Solve A x = b exactly; raises on singular A."""
    inv = invert_rational(rows)
    return [sum((r * b for r, b in zip(row, rhs)), ZERO) for row in inv]


def row_reduce(rows, zero, one):
    """Reduced row echelon form over a generic field.

    Returns (rref rows, pivot column list).  ``rows`` is not modified.
    """
    a = [list(row) for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != zero), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        d = a[r][c]
        a[r] = [x / d for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != zero:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def matrix_rank(rows, zero, one) -> int:
    if not rows:
        return 0
    _, pivots = row_reduce(rows, zero, one)
    return len(pivots)


def nullspace(rows, zero, one):
    """Basis of the right nullspace over a generic field.

    Each basis vector has a 1 in one free coordinate and pivot coordinates
    filled by back-substitution.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    rref, pivots = row_reduce(rows, zero, one)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = zero - rref[r][fc]
        basis.append(v)
    return basis


class QZeta3:
    """Element a + b*z of Q(zeta_3), with z^2 = -1 - z.

    Used only for exact order-3 eigenspace computations; the field norm
    a^2 - a*b + b^2 gives exact inversion.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", as_rat(a))
        object.__setattr__(self, "b", as_rat(b))

    def __setattr__(self, name, value):
        raise AttributeError("QZeta3 is immutable")

    def __add__(self, other):
        other = _qz(other)
        return QZeta3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _qz(other)
        return QZeta3(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _qz(other) - self

    def __mul__(self, other):
        other = _qz(other)
        # (a + bz)(c + dz) = ac + (ad + bc)z + bd z^2,  z^2 = -1 - z
        a, b, c, d = self.a, self.b, other.a, other.b
        return QZeta3(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __neg__(self):
        return QZeta3(-self.a, -self.b)

    def __truediv__(self, other):
        other = _qz(other)
        n = other.a * other.a - other.a * other.b + other.b * other.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(zeta_3)")
        # conjugate of c + dz is (c - d) - dz
        conj = QZeta3(other.a - other.b, -other.b)
        num = self * conj
        return QZeta3(num.a / n, num.b / n)

    def __eq__(self, other):
        other = _qz(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"QZeta3({self.a}, {self.b})"


def _qz(x):
    if isinstance(x, QZeta3):
        return x
    return QZeta3(as_rat(x), ZERO)


ZETA3 = QZeta3(0, 1)
QZ_ZERO = QZeta3(0, 0)
QZ_ONE = QZeta3(1, 0)
