"""Finite-dimensional semisimple Lie algebras from a finite Cartan matrix.

The algebra is held as an explicit multiplication table over the Chevalley
basis {h_1..h_l} + {E_r, F_r : r positive}.  Roots come from reflection
closure of the simple roots; structure constants are fixed by the
extraspecial-pair convention: positive roots carry a total order (height,
then lex on coordinates), each non-simple positive root g picks the pair
(a, b), a minimal with a + b = g, gets N(a, b) = p + 1 > 0, and every other
constant is forced by the Jacobi identity.  Root vectors for non-simple
roots are thereby canonical iterated brackets along the extraspecial chain,
which is also how automorphisms and matrix realizations are extended.

The bilinear form is the invariant form normalized so the highest root has
squared length 2 (a scalar multiple of the Killing form; the scale shifts
the central cocycle and hence the level convention, which reports note).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._ground import Q, ZERO, ONE, TWO, as_rat
from .cartan import GCM, CartanClass, symmetrize, validate_gcm, catalog_matrix
from .errors import InternalError, RejectionError

_ROOT_CAP = 1000


def _reflect(coords, i, gcm_rows):
    pairing = sum(c * gcm_rows[i][j] for j, c in enumerate(coords))
    out = list(coords)
    out[i] -= pairing
    return tuple(out)


def generate_roots(gcm: GCM):
    """All roots of the finite algebra, closed under simple reflections.

    Returns positives sorted by (height, lex); the full root set is the
    positives and their negatives.
    """
    if gcm.cls != CartanClass.FINITE:
        raise RejectionError("not-finite", f"root generation needs a finite class, got {gcm.cls.value}")
    rows = gcm.rows()
    n = gcm.n
    roots = {tuple(1 if j == i else 0 for j in range(n)) for i in range(n)}
    frontier = set(roots)
    while frontier:
        new = set()
        for r in frontier:
            for i in range(n):
                s = _reflect(r, i, rows)
                if s not in roots:
                    new.add(s)
        roots |= new
        frontier = new
        if len(roots) > _ROOT_CAP:
            raise InternalError("reflection closure did not terminate; matrix is not finite type")
    pos = sorted((r for r in roots if all(c >= 0 for c in r)), key=lambda r: (sum(r), r))
    neg = {tuple(-c for c in r) for r in pos}
    if neg | set(pos) != roots or neg & set(pos):
        raise InternalError("root set did not split into positives and negatives")
    return pos


@dataclass(frozen=True)
class HermitianSplit:
    """Compact/noncompact partition of the positive roots of su(n,1)."""

    compact_pos: tuple
    noncompact_pos: tuple
    noncompact_simple: int  # 1-based node index


class FiniteAlgebra:
    """Multiplication table, root data and invariant form for one algebra.

    Immutable after construction; every query is pure.  Basis layout:
    indices 0..l-1 are h_1..h_l, then E vectors over sorted positive roots,
    then F vectors in the same order.
    """

    def __init__(self, gcm: GCM):
        if gcm.cls != CartanClass.FINITE:
            raise RejectionError("not-finite", "FiniteAlgebra needs a finite-class Cartan matrix")
        self.gcm = gcm
        self.rank = gcm.n
        self.rows = gcm.rows()
        self.pos = generate_roots(gcm)
        self.npos = len(self.pos)
        self.dim = self.rank + 2 * self.npos
        self.pos_index = {r: k for k, r in enumerate(self.pos)}
        self.root_set = set(self.pos) | {tuple(-c for c in r) for r in self.pos}
        self.highest_root = self.pos[-1]

        # inner product on the root lattice, rescaled so (highest, highest) = 2
        d = symmetrize(gcm)
        raw = [[d[i] * Q(self.rows[i][j]) for j in range(self.rank)] for i in range(self.rank)]
        scale = TWO / self._ip_with(raw, self.highest_root, self.highest_root)
        self.ip = [[x * scale for x in row] for row in raw]

        self.especial = {}  # non-simple positive root -> (a, b) extraspecial pair
        self._npos_table = {}  # (a, b) positive roots, a+b positive root -> N
        self._build_structure_constants()
        self.nconst = self._extend_full_table()
        self._table = self._build_bracket_table()

    # -- root geometry ---------------------------------------------------

    @staticmethod
    def _ip_with(mat, a, b):
        return sum((as_rat(a[i]) * sum(mat[i][j] * b[j] for j in range(len(b))) for i in range(len(a))), ZERO)

    def root_ip(self, a, b):
        """Invariant form of two root-lattice vectors."""
        return self._ip_with(self.ip, a, b)

    def root_norm(self, a):
        return self.root_ip(a, a)

    def root_on_coroot(self, beta, i):
        """beta(h_i) = sum_j beta_j A[i][j]."""
        return sum(c * self.rows[i][j] for j, c in enumerate(beta))

    def coroot(self, root):
        """Coordinates of h_root over h_1..h_l: k_i (a_i, a_i) / (root, root)."""
        nrm = self.root_norm(root)
        return tuple(Q(root[i]) * self.ip[i][i] / nrm for i in range(self.rank))

    def height(self, root):
        return sum(root)

    # -- structure constants ----------------------------------------------

    def _string_down(self, a, b):
        """p = max k with b - k*a still a root (any sign)."""
        k = 1
        while tuple(x - k * y for x, y in zip(b, a)) in self.root_set:
            k += 1
        return k - 1

    def _build_structure_constants(self):
        simple = self.pos[: self.rank]
        for g in self.pos:
            if sum(g) < 2:
                continue
            pairs = []
            for a in self.pos:
                if self.pos_index[a] >= self.pos_index[g]:
                    break
                b = tuple(x - y for x, y in zip(g, a))
                if b in self.pos_index and self.pos_index[a] <= self.pos_index[b]:
                    pairs.append((a, b))
            if not pairs:
                raise InternalError(f"no special pair found for root {g}")
            ea, eb = pairs[0]
            self.especial[g] = (ea, eb)
            self._set_npos(ea, eb, Q(self._string_down(ea, eb) + 1))
            for (x, y) in pairs[1:]:
                self._set_npos(x, y, self._propagate(x, y, ea, eb, g))

    def _set_npos(self, a, b, val):
        self._npos_table[(a, b)] = val
        self._npos_table[(b, a)] = -val

    def _n_pos_minus(self, x, a):
        """N(x, -a) for positive x, a with x - a a positive root."""
        c = tuple(p - q for p, q in zip(x, a))
        return self.root_norm(c) / self.root_norm(x) * self._npos_table[(c, a)]

    def _propagate(self, x, y, ea, eb, g):
        # Jacobi identity on (E_x, E_y, E_{-ea}) projected on E_{eb}:
        #   N(x,y) N(g,-ea) + N(y,-ea) N(y-ea, x) - N(x,-ea) N(x-ea, y) = 0
        n_g = -(self.root_norm(eb) / self.root_norm(g)) * self._npos_table[(ea, eb)]
        total = ZERO
        ymea = tuple(p - q for p, q in zip(y, ea))
        if ymea in self.pos_index:
            total += self._n_pos_minus(y, ea) * self._npos_table[(ymea, x)]
        xmea = tuple(p - q for p, q in zip(x, ea))
        if xmea in self.pos_index:
            total -= self._n_pos_minus(x, ea) * self._npos_table[(xmea, y)]
        val = -total / n_g
        expect = self._string_down(x, y) + 1
        if val * val != Q(expect * expect):
            raise InternalError(
                f"sign propagation produced N={val} for pair {x},{y}; |N| should be {expect}"
            )
        return val

    def _extend_full_table(self):
        """N over all ordered root pairs (any signs) with a root sum."""
        full = {}
        allroots = list(self.root_set)
        for a in allroots:
            for b in allroots:
                s = tuple(x + y for x, y in zip(a, b))
                if s not in self.root_set:
                    continue
                full[(a, b)] = self._reduce_n(a, b)
        return full

    def _reduce_n(self, a, b):
        apos = a in self.pos_index
        bpos = b in self.pos_index
        if apos and bpos:
            return self._npos_table[(a, b)]
        if not apos and not bpos:
            na, nb = tuple(-x for x in a), tuple(-x for x in b)
            return -self._npos_table[(na, nb)]
        if apos:  # a > 0, b < 0
            bp = tuple(-x for x in b)
            c = tuple(x - y for x, y in zip(a, bp))
            if c in self.pos_index:
                return self.root_norm(c) / self.root_norm(a) * self._npos_table[(c, bp)]
            cp = tuple(-x for x in c)
            return self.root_norm(cp) / self.root_norm(bp) * self._npos_table[(cp, a)]
        return -self._reduce_n(b, a)

    # -- basis and bracket -------------------------------------------------

    def e_index(self, root) -> int:
        return self.rank + self.pos_index[root]

    def f_index(self, root) -> int:
        return self.rank + self.npos + self.pos_index[root]

    def h_index(self, i: int) -> int:
        """0-based Cartan index for node i (1-based)."""
        return i - 1

    def root_of(self, k: int):
        """Signed root attached to basis index k, or None for Cartan."""
        if k < self.rank:
            return None
        if k < self.rank + self.npos:
            return self.pos[k - self.rank]
        return tuple(-c for c in self.pos[k - self.rank - self.npos])

    def index_of_root_vector(self, root) -> int:
        if root in self.pos_index:
            return self.e_index(root)
        neg = tuple(-c for c in root)
        return self.f_index(neg)

    def basis_name(self, k: int) -> str:
        if k < self.rank:
            return f"h{k + 1}"
        r = self.root_of(k)
        if k < self.rank + self.npos:
            return "e[" + "".join(str(c) for c in r) + "]"
        return "f[" + "".join(str(-c) for c in r) + "]"

    def parse_basis_name(self, name: str) -> int:
        name = name.strip()
        if name.startswith("h"):
            i = int(name[1:])
            if not 1 <= i <= self.rank:
                raise RejectionError("unknown-basis-name", f"no Cartan element {name!r}")
            return i - 1
        kind = name[0]
        if kind not in "ef":
            raise RejectionError("unknown-basis-name", f"cannot parse {name!r}")
        if name[1] == "[":
            coords = tuple(int(c) for c in name[2:-1])
        else:
            i = int(name[1:])
            coords = tuple(1 if j == i - 1 else 0 for j in range(self.rank))
        if coords not in self.pos_index:
            raise RejectionError("unknown-basis-name", f"{name!r} is not a positive root here")
        return self.e_index(coords) if kind == "e" else self.f_index(coords)

    def _build_bracket_table(self):
        table = {}
        for i in range(self.dim):
            for j in range(self.dim):
                table[(i, j)] = self._bracket_pair(i, j)
        return table

    def _bracket_pair(self, i, j):
        ri, rj = self.root_of(i), self.root_of(j)
        if ri is None and rj is None:
            return {}
        if ri is None:
            w = self.root_on_coroot(rj, i)
            return {j: Q(w)} if w else {}
        if rj is None:
            w = self.root_on_coroot(ri, j)
            return {i: -Q(w)} if w else {}
        s = tuple(x + y for x, y in zip(ri, rj))
        if all(c == 0 for c in s):
            out = {}
            for t, c in enumerate(self.coroot(ri)):
                if c != 0:
                    out[t] = c
            return out
        if s in self.root_set:
            return {self.index_of_root_vector(s): self.nconst[(ri, rj)]}
        return {}

    def bracket_basis(self, i: int, j: int) -> dict:
        """[b_i, b_j] as a sparse vector {basis index: rational}."""
        return self._table[(i, j)]

    def bracket_vec(self, x: dict, y: dict) -> dict:
        """Bracket of sparse vectors with generic (field-like) coefficients."""
        out = {}
        for i, xi in x.items():
            for j, yj in y.items():
                cij = xi * yj
                for k, n in self._table[(i, j)].items():
                    v = out.get(k)
                    v = cij * n if v is None else v + cij * n
                    if v == 0:
                        out.pop(k, None)
                    else:
                        out[k] = v
        return out

    # -- invariant form ----------------------------------------------------

    def invariant_form(self, i: int, j: int):
        """Normalized invariant form on basis pairs ((highest, highest) = 2)."""
        ri, rj = self.root_of(i), self.root_of(j)
        if ri is None and rj is None:
            ai = tuple(1 if t == i else 0 for t in range(self.rank))
            aj = tuple(1 if t == j else 0 for t in range(self.rank))
            return 4 * self.root_ip(ai, aj) / (self.root_norm(ai) * self.root_norm(aj))
        if ri is None or rj is None:
            return ZERO
        if all(x + y == 0 for x, y in zip(ri, rj)):
            return TWO / self.root_norm(ri)
        return ZERO

    # -- derived constructions ----------------------------------------------

    def simple_root(self, i: int):
        """Coordinate vector of the i-th simple root (0-based node index)."""
        return tuple(1 if t == i else 0 for t in range(self.rank))

    def serre_vector(self, i: int, j: int) -> dict:
        """(ad e_i)^(1 - A_ij) e_j; zero in the algebra."""
        ei = {self.e_index(self.simple_root(i)): ONE}
        v = {self.e_index(self.simple_root(j)): ONE}
        for _ in range(1 - self.rows[i][j]):
            v = self.bracket_vec(ei, v)
        return v


def build_algebra(source) -> FiniteAlgebra:
    """Build from a GCM, a raw matrix, or a catalog name like 'G2'."""
    if isinstance(source, FiniteAlgebra):
        return source
    if isinstance(source, str):
        source = catalog_matrix(source)
    if not isinstance(source, GCM):
        source = validate_gcm(source)
    return FiniteAlgebra(source)


def fundamental_weights_finite(gcm) -> list:
    """Weights L_j with L_j(h_k) = delta_jk, as coordinate vectors over simple roots."""
    from .linalg import invert_rational

    rows = gcm.rows() if isinstance(gcm, GCM) else [list(r) for r in gcm]
    inv = invert_rational(rows)
    n = len(rows)
    return [tuple(inv[m][j] for m in range(n)) for j in range(n)]


def hermitian_split_su_n1(n: int):
    """su(n,1): the A_n algebra with node 1 noncompact.

    Positive roots with alpha_1-coefficient 1 form the abelian nilradical
    p+; the rest (coefficient 0) are the compact positive roots.
    """
    if n < 1:
        raise RejectionError("bad-rank", f"su(n,1) needs n >= 1, got {n}")
    alg = build_algebra(f"A{n}")
    noncompact = tuple(r for r in alg.pos if r[0] == 1)
    compact = tuple(r for r in alg.pos if r[0] == 0)
    if len(noncompact) + len(compact) != alg.npos:
        raise InternalError("unexpected alpha_1 coefficient in an A_n root")
    return alg, HermitianSplit(compact, noncompact, 1)


class DiagramAutomorphism:
    """Basis-to-basis extension of a Dynkin-diagram symmetry.

    Simple generators map by the node permutation; root vectors for
    non-simple roots follow their canonical iterated-bracket definitions.
    """

    def __init__(self, alg: FiniteAlgebra, perm, q: int):
        self.alg = alg
        self.perm = tuple(perm)
        self.q = q
        n = alg.rank
        if sorted(self.perm) != list(range(n)):
            raise RejectionError("bad-permutation", f"{perm!r} is not a permutation of 0..{n - 1}")
        for i in range(n):
            for j in range(n):
                if alg.rows[self.perm[i]][self.perm[j]] != alg.rows[i][j]:
                    raise RejectionError(
                        "not-a-diagram-symmetry", "permutation does not preserve the Cartan matrix", (i, j)
                    )
        order = 1
        p = self.perm
        while p != tuple(range(n)):
            p = tuple(self.perm[k] for k in p)
            order += 1
        if order != q:
            raise RejectionError("order-mismatch", f"permutation has order {order}, expected {q}")
        self.images = self._extend()

    def _extend(self):
        alg, perm = self.alg, self.perm
        images = {}
        for i in range(alg.rank):
            images[alg.h_index(i + 1)] = {alg.h_index(perm[i] + 1): ONE}
        for k, r in enumerate(alg.pos):
            if sum(r) == 1:
                i = r.index(1)
                img = tuple(1 if t == perm[i] else 0 for t in range(alg.rank))
                images[alg.e_index(r)] = {alg.e_index(img): ONE}
                images[alg.f_index(r)] = {alg.f_index(img): ONE}
        for r in alg.pos:
            if sum(r) < 2:
                continue
            a, b = alg.especial[r]
            n = alg._npos_table[(a, b)]
            images[alg.e_index(r)] = _scale(
                alg.bracket_vec(images[alg.e_index(a)], images[alg.e_index(b)]), ONE / n
            )
            images[alg.f_index(r)] = _scale(
                alg.bracket_vec(images[alg.f_index(a)], images[alg.f_index(b)]), -ONE / n
            )
        return images

    def apply(self, vec: dict) -> dict:
        out = {}
        for i, c in vec.items():
            for j, w in self.images[i].items():
                v = out.get(j, ZERO) + c * w
                if v == 0:
                    out.pop(j, None)
                else:
                    out[j] = v
        return out

    def matrix(self):
        """Dense rational matrix M with column k = image of basis vector k."""
        d = self.alg.dim
        m = [[ZERO] * d for _ in range(d)]
        for k in range(d):
            for j, w in self.images[k].items():
                m[j][k] = w
        return m


def _scale(vec: dict, c) -> dict:
    return {k: c * v for k, v in vec.items() if c * v != 0}


def matrix_realization(alg: FiniteAlgebra):
    """A_n only: basis index -> (n+1)x(n+1) rational matrix, e_i -> E_{i-1,i}.

    Extended to non-simple root vectors through the same iterated-bracket
    chains as the abstract basis, so it is a Lie algebra homomorphism.
    """
    n = alg.rank
    if alg.gcm.entries != tuple(tuple(r) for r in catalog_matrix(f"A{n}")):
        raise RejectionError("not-type-A", "matrix realization is defined for A_n only")
    size = n + 1

    def unit(a, b):
        m = [[ZERO] * size for _ in range(size)]
        m[a][b] = ONE
        return m

    def msub(x, y):
        return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]

    def mmul(x, y):
        return [
            [sum((x[i][t] * y[t][j] for t in range(size)), ZERO) for j in range(size)]
            for i in range(size)
        ]

    def comm(x, y):
        return msub(mmul(x, y), mmul(y, x))

    phi = {}
    for i in range(1, n + 1):
        hm = [[ZERO] * size for _ in range(size)]
        hm[i - 1][i - 1] = ONE
        hm[i][i] = -ONE
        phi[alg.h_index(i)] = hm
    for r in alg.pos:
        if sum(r) == 1:
            i = r.index(1) + 1
            phi[alg.e_index(r)] = unit(i - 1, i)
            phi[alg.f_index(r)] = unit(i, i - 1)
    for r in alg.pos:
        if sum(r) < 2:
            continue
        a, b = alg.especial[r]
        nn = alg._npos_table[(a, b)]
        phi[alg.e_index(r)] = [[x / nn for x in row] for row in comm(phi[alg.e_index(a)], phi[alg.e_index(b)])]
        phi[alg.f_index(r)] = [[-x / nn for x in row] for row in comm(phi[alg.f_index(a)], phi[alg.f_index(b)])]
    return phi
