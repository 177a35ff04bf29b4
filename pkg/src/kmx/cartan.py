"""Generalized Cartan matrices: validation, classification, symmetrization.

Convention: ``A[i][j]`` is the value of the j-th simple root on the i-th
simple coroot, A_ij = alpha_j(h_i) = 2(alpha_j, alpha_i)/(alpha_i, alpha_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ._ground import Q, ZERO, ONE
from .errors import RejectionError
from .linalg import all_principal_minors, bareiss_det, leading_principal_minors


class CartanClass(str, Enum):
    FINITE = "finite"
    AFFINE = "affine"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class GCM:
    """A validated generalized Cartan matrix with its three-way class."""

    entries: tuple
    cls: CartanClass

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def rows(self):
        return [list(r) for r in self.entries]


def validate_gcm(rows) -> GCM:
    """Check the generalized Cartan matrix axioms and classify.

    Raises RejectionError naming the violated axiom and index pair:
    a) A_ii = 2; b) off-diagonal entries are nonpositive integers;
    c) A_ij = 0 iff A_ji = 0.
    """
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise RejectionError("gcm-not-square", f"row {i} has length {len(row)}, expected {n}")
    m = []
    for i in range(n):
        out = []
        for j in range(n):
            x = rows[i][j]
            if x != int(x):
                raise RejectionError("gcm-not-integer", f"entry {x!r} is not an integer", (i, j))
            out.append(int(x))
        m.append(out)
    for i in range(n):
        if m[i][i] != 2:
            raise RejectionError("gcm-axiom-a", f"diagonal entry is {m[i][i]}, must be 2", (i, i))
    for i in range(n):
        for j in range(n):
            if i != j and m[i][j] > 0:
                raise RejectionError(
                    "gcm-axiom-b", f"off-diagonal entry {m[i][j]} is positive", (i, j)
                )
    for i in range(n):
        for j in range(i + 1, n):
            if (m[i][j] == 0) != (m[j][i] == 0):
                raise RejectionError(
                    "gcm-axiom-c", "zero pattern is not symmetric", (i + 0, j + 0)
                )
    entries = tuple(tuple(row) for row in m)
    return GCM(entries, classify(entries))


def classify(rows) -> CartanClass:
    """Three-way class from exact determinants of all principal submatrices.

    Finite: det and every principal minor positive.  Affine: det zero and
    every proper principal minor positive.  Indefinite: anything else.
    """
    n = len(rows)
    det = bareiss_det(rows)
    proper_positive = all(
        d > 0 for idx, d in all_principal_minors(rows) if len(idx) < n
    )
    if det > 0 and proper_positive:
        return CartanClass.FINITE
    if det == 0 and proper_positive:
        return CartanClass.AFFINE
    return CartanClass.INDEFINITE


def principal_minors(gcm) -> list:
    """Leading principal minors of orders 1..n as exact rationals."""
    rows = gcm.entries if isinstance(gcm, GCM) else gcm
    return [Q(d) for d in leading_principal_minors(rows)]


def symmetrize(gcm) -> tuple:
    """Positive rationals d with diag(d)*A symmetric, normalized to min d_i = 1.

    Exists for finite and affine classes; indefinite matrices with
    inconsistent cycles are rejected.
    """
    rows = gcm.entries if isinstance(gcm, GCM) else gcm
    n = len(rows)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = ONE
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or rows[i][j] == 0:
                    continue
                # d_i A_ij = d_j A_ji
                want = d[i] * Q(rows[i][j]) / Q(rows[j][i])
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    raise RejectionError(
                        "not-symmetrizable", "inconsistent cycle in the Coxeter graph", (i, j)
                    )
    lo = min(d)
    d = tuple(x / lo for x in d)
    for i in range(n):
        for j in range(n):
            if d[i] * rows[i][j] != d[j] * rows[j][i]:
                raise RejectionError("not-symmetrizable", "no positive symmetrizer exists", (i, j))
    return d


# -- catalog ---------------------------------------------------------------

def _chain(n):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    for i in range(n - 1):
        m[i][i + 1] = -1
        m[i + 1][i] = -1
    return m


def catalog_matrix(name: str):
    """Finite catalog matrices A1..A9, B2..B4, C2..C4, D4, G2.

    B_n carries the short root at the last node ((alpha_n, alpha_n) minimal),
    C_n the long one; D4 has node 2 as the branch point.
    """
    name = name.strip()
    fam, rank = name[0].upper(), name[1:]
    if not rank.isdigit():
        raise RejectionError("unknown-catalog-name", f"cannot parse rank in {name!r}")
    n = int(rank)
    if fam == "A" and 1 <= n <= 9:
        return _chain(n)
    if fam == "B" and 2 <= n <= 4:
        m = _chain(n)
        m[n - 1][n - 2] = -2  # alpha_{n-1}(h_n) = -2: last root short
        return m
    if fam == "C" and 2 <= n <= 4:
        m = _chain(n)
        m[n - 2][n - 1] = -2  # alpha_n(h_{n-1}) = -2: last root long
        return m
    if fam == "D" and n == 4:
        # chain 1-2-3 with node 4 attached to the branch node 2
        m = _chain(3)
        for row in m:
            row.append(0)
        m.append([0, 0, 0, 2])
        m[1][3] = m[3][1] = -1
        return m
    if fam == "G" and n == 2:
        return [[2, -1], [-3, 2]]
    raise RejectionError("unknown-catalog-name", f"no catalog matrix named {name!r}")
