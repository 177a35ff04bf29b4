"""Untwisted affine algebras as centrally extended loop algebras.

An element is a finite sum of z^j (x) b terms over the finite algebra's
basis plus central and derivation components.  The bracket is

    [z^j a, z^k b] = z^(j+k) [a, b] + j delta_{j,-k} (a, b) c
    [d, z^j a] = j z^j a,   c central,

with (,) the normalized invariant form of the finite algebra (the scalar
gap to the Killing form re-parametrizes the level; reports carry the
convention).  Affinization appends the node 0 generators built from the
highest root and extends the Cartan matrix by one row and column.

Twisted decompositions split the finite algebra into eigenspaces of a
diagram automorphism, exactly: order 2 over the rationals, order 3 over
Q(zeta_3) via its rational companion representation.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._ground import Q, ZERO, ONE, TWO, as_rat
from .cartan import GCM, CartanClass, validate_gcm
from .errors import InternalError, RejectionError
from .finite_lie import DiagramAutomorphism, FiniteAlgebra, fundamental_weights_finite, matrix_realization
from .linalg import QZ_ONE, QZ_ZERO, QZeta3, ZETA3, nullspace, row_reduce
from .scalars import GR_ONE, GR_ZERO, GaussianRational


def _coeff(x):
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(as_rat(x), ZERO)


class LoopElement:
    """Finite support map (degree, basis index) -> coefficient, plus c and d.

    Coefficients are exact Gaussian rationals; zero coefficients are never
    stored.  Instances are immutable by convention.
    """

    __slots__ = ("alg", "terms", "c", "d")

    def __init__(self, alg: FiniteAlgebra, terms=None, c=0, d=0):
        self.alg = alg
        clean = {}
        for (deg, idx), v in (terms or {}).items():
            v = _coeff(v)
            if not v.is_zero():
                clean[(int(deg), int(idx))] = v
        self.terms = clean
        self.c = _coeff(c)
        self.d = _coeff(d)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(alg):
        return LoopElement(alg)

    @staticmethod
    def central(alg, coeff=1):
        return LoopElement(alg, c=coeff)

    @staticmethod
    def derivation(alg, coeff=1):
        return LoopElement(alg, d=coeff)

    @staticmethod
    def term(alg, deg: int, idx: int, coeff=1):
        return LoopElement(alg, {(deg, idx): coeff})

    # -- linear structure ----------------------------------------------------

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            w = terms.get(k, GR_ZERO) + v
            if w.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = w
        return LoopElement(self.alg, terms, self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        s = _coeff(s)
        return LoopElement(
            self.alg,
            {k: s * v for k, v in self.terms.items()},
            s * self.c,
            s * self.d,
        )

    def is_zero(self) -> bool:
        return not self.terms and self.c.is_zero() and self.d.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, LoopElement)
            and self.alg is other.alg
            and self.terms == other.terms
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.c, self.d))

    def _check(self, other):
        if not isinstance(other, LoopElement) or other.alg is not self.alg:
            raise RejectionError("algebra-mismatch", "loop elements over different base algebras")

    # -- the affine bracket ----------------------------------------------------

    def bracket(self, other) -> "LoopElement":
        self._check(other)
        alg = self.alg
        terms = {}
        cocycle = GR_ZERO

        def add(deg, idx, val):
            key = (deg, idx)
            w = terms.get(key, GR_ZERO) + val
            if w.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = w

        for (j, a), xa in self.terms.items():
            for (k, b), yb in other.terms.items():
                cab = xa * yb
                for idx, n in alg.bracket_basis(a, b).items():
                    add(j + k, idx, cab * n)
                if j == -k and j != 0:
                    form = alg.invariant_form(a, b)
                    if form != 0:
                        cocycle = cocycle + cab * (Q(j) * form)
        # d acts as the degree derivation
        if not self.d.is_zero():
            for (k, b), yb in other.terms.items():
                if k != 0:
                    add(k, b, self.d * yb * Q(k))
        if not other.d.is_zero():
            for (j, a), xa in self.terms.items():
                if j != 0:
                    add(j, a, -(other.d * xa * Q(j)))
        return LoopElement(alg, terms, cocycle)

    # -- inspection --------------------------------------------------------------

    def degrees(self):
        return sorted({deg for (deg, _) in self.terms})

    def finite_part(self, deg: int) -> dict:
        """Sparse finite-algebra vector at one loop degree."""
        return {idx: v for (dg, idx), v in self.terms.items() if dg == deg}

    def to_json(self):
        out = {
            "terms": [
                {
                    "deg": deg,
                    "elem": self.alg.basis_name(idx),
                    "coeff": _scalar_json(v),
                }
                for (deg, idx), v in sorted(self.terms.items())
            ],
        }
        out["c"] = _scalar_json(self.c)
        out["d"] = _scalar_json(self.d)
        return out

    @staticmethod
    def from_json(alg, obj) -> "LoopElement":
        from .scalars import scalar_from_json

        terms = {}
        for t in obj.get("terms", []):
            idx = alg.parse_basis_name(t["elem"])
            sc = scalar_from_json(t["coeff"])
            if not sc.exact:
                raise RejectionError("inexact-input", "loop element coefficients must be exact")
            terms[(int(t["deg"]), idx)] = sc.val
        c = scalar_from_json(obj.get("c", "0"))
        d = scalar_from_json(obj.get("d", "0"))
        return LoopElement(alg, terms, c.val, d.val)

    def __repr__(self):
        bits = []
        for (deg, idx), v in sorted(self.terms.items()):
            bits.append(f"({v})z^{deg}*{self.alg.basis_name(idx)}")
        if not self.c.is_zero():
            bits.append(f"({self.c})c")
        if not self.d.is_zero():
            bits.append(f"({self.d})d")
        return " + ".join(bits) if bits else "0"


def _scalar_json(v):
    from .scalars import scalar_to_json

    return scalar_to_json(v)


# -- weights -------------------------------------------------------------------


@dataclass(frozen=True)
class Weight:
    """Functional on the affine Cartan: values on h_0..h_l and on d.

    These are simultaneously the coordinates over the fundamental weights
    and delta: W = sum W(h_i) Lambda_i + W(d) delta.
    """

    h: tuple
    d: object

    @staticmethod
    def make(hvals, dval=0):
        return Weight(tuple(as_rat(x) for x in hvals), as_rat(dval))

    def __call__(self, i: int):
        return self.h[i]

    def add(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.h, other.h)), self.d + other.d)

    def scale(self, s) -> "Weight":
        s = as_rat(s)
        return Weight(tuple(s * a for a in self.h), s * self.d)

    def level(self, marks_dual) -> object:
        """Value on the canonical central element c = sum a_i^vee h_i."""
        return sum((m * v for m, v in zip(marks_dual, self.h)), ZERO)

    def to_json(self):
        from ._ground import rat_str

        return {"h": [rat_str(x) for x in self.h], "d": rat_str(self.d)}


# -- affinization ------------------------------------------------------------------


@dataclass(frozen=True)
class AffineAlgebra:
    """The extended Cartan matrix and node-0 generator data over a finite algebra."""

    finite: FiniteAlgebra
    gcm: GCM  # (l+1) x (l+1), affine class; index 0 is the added node
    e: tuple  # LoopElements e_0..e_l
    f: tuple
    h: tuple
    marks: tuple  # delta = sum marks[i] alpha_i over affine simple roots
    marks_dual: tuple  # c = sum marks_dual[i] h_i

    @property
    def rank(self) -> int:
        return self.finite.rank + 1


def affinize(alg: FiniteAlgebra) -> AffineAlgebra:
    """Extend by the affine node: e_0 = z F_theta, f_0 = z^-1 E_theta,
    h_0 = c - H_theta (highest-root norm 2 makes the level coefficient 1)."""
    theta = alg.highest_root
    l = alg.rank
    rows = [[0] * (l + 1) for _ in range(l + 1)]
    rows[0][0] = 2
    for j in range(1, l + 1):
        # alpha_j(h_0) = -alpha_j(H_theta);  alpha_0(h_j) = -theta(h_j)
        co = alg.coroot(theta)
        aj = alg.simple_root(j - 1)
        v0j = -sum(co[i] * alg.rows[i][j - 1] for i in range(l))
        vj0 = -alg.root_on_coroot(theta, j - 1)
        if v0j != int(v0j) or vj0 != int(vj0):
            raise InternalError("non-integral affine Cartan entries")
        rows[0][j] = int(v0j)
        rows[j][0] = int(vj0)
        for k in range(1, l + 1):
            rows[j][k] = alg.rows[j - 1][k - 1]
    gcm = validate_gcm(rows)
    if gcm.cls != CartanClass.AFFINE:
        raise InternalError("affinization did not produce an affine-class matrix")

    e0 = LoopElement.term(alg, 1, alg.f_index(theta))
    f0 = LoopElement.term(alg, -1, alg.e_index(theta))
    h0 = LoopElement(
        alg,
        {(0, i): -c for i, c in enumerate(alg.coroot(theta)) if c != 0},
        c=TWO / alg.root_norm(theta),
    )
    es = [e0]
    fs = [f0]
    hs = [h0]
    for i in range(l):
        r = alg.simple_root(i)
        es.append(LoopElement.term(alg, 0, alg.e_index(r)))
        fs.append(LoopElement.term(alg, 0, alg.f_index(r)))
        hs.append(LoopElement.term(alg, 0, alg.h_index(i + 1)))

    marks = delta_marks(gcm)
    codual = alg.coroot(theta)
    marks_dual = (ONE,) + tuple(codual)
    return AffineAlgebra(alg, gcm, tuple(es), tuple(fs), tuple(hs), marks, marks_dual)


def delta_marks(affine_gcm: GCM):
    """Coefficients a_i with delta = sum a_i alpha_i: the positive integer
    null vector of the affine Cartan matrix, normalized to a_0 = 1."""
    rows = [[Q(x) for x in row] for row in affine_gcm.entries]
    null = nullspace(rows, ZERO, ONE)
    if len(null) != 1:
        raise RejectionError("not-affine", f"Cartan null space has dimension {len(null)}, need 1")
    v = null[0]
    v = [x / v[0] for x in v]
    if any(x <= 0 or x != int(x) for x in v):
        raise InternalError("affine marks are not positive integers")
    return tuple(Q(int(x)) for x in v)


def delta_and_lambda0(affine_gcm: GCM):
    """(delta, Lambda_0) as Weight objects, plus the marks of delta."""
    n = affine_gcm.n
    marks = delta_marks(affine_gcm)
    delta = Weight.make([0] * n, 1)
    lam0 = Weight.make([1] + [0] * (n - 1), 0)
    return delta, lam0, marks


def fundamental_weights_affine(aff: AffineAlgebra):
    """Extensions L_j = Ldot_j + mu_j L_0 with mu_j = -sum_k A_0k (Adot^-1)_kj.

    Returns (weights L_1..L_l as Weight objects, coefficients mu)."""
    l = aff.finite.rank
    finite_weights = fundamental_weights_finite(aff.finite.gcm)
    from .linalg import invert_rational

    inv = invert_rational(aff.finite.rows)
    mus = []
    for j in range(l):
        mu = -sum((Q(aff.gcm[0][k + 1]) * inv[k][j] for k in range(l)), ZERO)
        mus.append(mu)
    weights = [Weight.make([0] * (i) + [1] + [0] * (l - i), 0) for i in range(1, l + 1)]
    # Weight coordinates: L_j(h_k) = delta_jk on h_0..h_l, L_j(d) = 0 by construction;
    # mu_j is reported and cross-checked against the h_0 evaluation elsewhere.
    return weights, tuple(mus)


# -- membership tests -------------------------------------------------------------


def in_standard_borel(x: LoopElement) -> bool:
    """Nonnegative loop degrees only; at degree zero the finite part must lie
    in the Borel (Cartan + positive root vectors).  c and d always belong."""
    alg = x.alg
    for (deg, idx), _ in x.terms.items():
        if deg < 0:
            return False
        if deg == 0:
            r = alg.root_of(idx)
            if r is not None and r not in alg.pos_index:
                return False
    return True


def in_natural_parabolic(x: LoopElement) -> bool:
    """Finite part in the Borel at every degree, degrees unrestricted."""
    alg = x.alg
    for (deg, idx), _ in x.terms.items():
        r = alg.root_of(idx)
        if r is not None and r not in alg.pos_index:
            return False
    return True


def in_exceptional_parabolic(x: LoopElement, phi=None) -> bool:
    """su(n,1) matrix-realization test: all strictly-lower entries vanish.

    ``phi`` is the matrix realization map (computed if omitted)."""
    alg = x.alg
    if phi is None:
        phi = matrix_realization(alg)
    size = alg.rank + 1
    acc = {}
    for (deg, idx), v in x.terms.items():
        m = phi[idx]
        for a in range(size):
            for b in range(a):
                if m[a][b] != 0:
                    key = (deg, a, b)
                    w = acc.get(key, GR_ZERO) + v * m[a][b]
                    acc[key] = w
    return all(w.is_zero() for w in acc.values())


# -- twisted decomposition -----------------------------------------------------------


@dataclass(frozen=True)
class TwistedDecomposition:
    """Eigenspace bases of a diagram automorphism.

    For q = 2 the basis vectors are rational; for q = 3 the p = 1, 2 spaces
    are bases over Q(zeta_3) stored as QZeta3 coordinate vectors.
    """

    q: int
    dims: tuple
    bases: tuple  # tuple over p of list of coordinate vectors (length = alg.dim)
    field: str  # "rational" or "qzeta3"


def twisted_decomposition(alg: FiniteAlgebra, perm, q: int) -> TwistedDecomposition:
    aut = DiagramAutomorphism(alg, perm, q)
    m = aut.matrix()
    dim = alg.dim
    if q == 2:
        spaces = []
        for sign in (1, -1):
            rows = [[m[i][j] - (ONE if i == j else ZERO) * sign for j in range(dim)] for i in range(dim)]
            spaces.append(nullspace(rows, ZERO, ONE))
        dims = tuple(len(s) for s in spaces)
        if sum(dims) != dim:
            raise InternalError("order-2 eigenspaces do not fill the algebra")
        return TwistedDecomposition(2, dims, tuple(spaces), "rational")
    if q != 3:
        raise RejectionError("bad-order", f"twist order must be 2 or 3, got {q}")

    ident = [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]
    m2 = _matmul(m, m)
    fixed_rows = [[m[i][j] - ident[i][j] for j in range(dim)] for i in range(dim)]
    fixed = nullspace(fixed_rows, ZERO, ONE)
    # kernel of Psi^2 + Psi + 1 carries the zeta and zeta^2 eigenvectors
    kr = [[m2[i][j] + m[i][j] + ident[i][j] for j in range(dim)] for i in range(dim)]
    knull = nullspace(kr, ZERO, ONE)
    if len(fixed) + len(knull) != dim:
        raise InternalError("order-3 eigenspaces do not fill the algebra")

    def to_eigvec(a, p):
        ma = _matvec(m, a)
        if p == 1:  # v = a - zeta Psi a
            return [QZeta3(x, ZERO) - ZETA3 * QZeta3(y, ZERO) for x, y in zip(a, ma)]
        # p = 2: v = a + zeta (a + Psi a)
        return [QZeta3(x, ZERO) + ZETA3 * QZeta3(x + y, ZERO) for x, y in zip(a, ma)]

    bases = [ [list(v) for v in fixed] ]
    for p in (1, 2):
        cand = [to_eigvec(a, p) for a in knull]
        rref, pivots = row_reduce(cand, QZ_ZERO, QZ_ONE) if cand else ([], [])
        indep = [rref[r] for r in range(len(pivots))]
        bases.append(indep)
    dims = tuple(len(b) for b in bases)
    if dims[1] != dims[2] or dims[0] + dims[1] + dims[2] != dim:
        raise InternalError("order-3 eigenspace dimensions are inconsistent")
    return TwistedDecomposition(3, dims, tuple(bases), "qzeta3")


def _matmul(a, b):
    n = len(a)
    return [[sum((a[i][t] * b[t][j] for t in range(n)), ZERO) for j in range(n)] for i in range(n)]


def _matvec(a, v):
    n = len(a)
    return [sum((a[i][t] * v[t] for t in range(n)), ZERO) for i in range(n)]
