"""The Gram engine: highest-weight words, straightening, exact form verdicts.

A weight block of a (generalized) Verma module is spanned by words in
lowering operators applied to the highest weight vector.  Words may be
linearly dependent; since the Gram matrix of a spanning set has the same
rank and definiteness as the form on the spanned space, verdicts are
unaffected.  The contravariant value

    H(u, w) = functional(projection(omega(w) u))

is computed by applying the raising factors of omega(w) to u one
commutator at a time and reading off the coefficient of the empty word.
Two context families exist:

* standard Borel: tokens are the Chevalley lowering generators f_0..f_l of
  any (finite or affine) Cartan matrix; straightening needs only
  [e_i, f_j] = delta_ij h_i and the h-weight bookkeeping.
* loop parabolic (natural or exceptional, over su(n,1)): tokens are
  z^k (x) F_r for positive roots r; straightening runs through the finite
  structure constants and the central cocycle.  Weight blocks pool all
  token degrees inside a window [-M, M]; cross-degree entries are
  genuinely nonzero here, so definiteness must be judged on the pooled
  block.  A negative direction in any truncation certifies non-unitarity;
  semidefiniteness of a truncation is only evidence.

Exact contexts keep Gaussian-rational coefficients end to end; approximate
contexts (non-Gaussian phases) run on complex doubles and every verdict
carries the exactness flag.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._ground import Q, ZERO, ONE, as_rat
from .errors import InternalError, RejectionError, ResourceError
from .finite_lie import FiniteAlgebra
from .scalars import GR_ONE, GR_ZERO, GaussianRational, Scalar, scalar_to_json

DEFAULT_BLOCK_CAP = 2000

STANDARD_BOREL = "standard_borel"
NATURAL_PARABOLIC = "natural_parabolic"
EXCEPTIONAL_PARABOLIC = "exceptional_parabolic"


class FormContext:
    """Immutable bundle: algebra data, anti-involution signs, functional.

    Use the ``standard_borel`` / ``loop_parabolic`` constructors.  All
    caches are per-instance and only ever extended, so independent blocks
    may be evaluated from several threads.
    """

    def __init__(self):
        raise TypeError("use FormContext.standard_borel or FormContext.loop_parabolic")

    @classmethod
    def _new(cls):
        return object.__new__(cls)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def standard_borel(gcm_rows, lam_values, lam_d=0, omega_signs=None, exact=True,
                       eps=Scalar.DEFAULT_EPS, descriptor=None, affine=True):
        """Chevalley-generator context for any Cartan matrix.

        ``lam_values`` are the functional's values on h_0..h_l (exact
        scalars unless ``exact`` is false); ``omega_signs[i]`` = -1 twists
        omega(e_i) = -f_i (noncompact real form), default all +1.  With
        ``affine`` set, letter 0 is the node-0 generator at loop degree -1;
        finite-algebra contexts pass ``affine=False``.
        """
        ctx = FormContext._new()
        ctx.mode = STANDARD_BOREL
        ctx.rows = [list(map(int, r)) for r in gcm_rows]
        ctx.nletters = len(ctx.rows)
        ctx.affine = bool(affine)
        ctx.exact = bool(exact)
        ctx.eps = float(eps)
        ctx.lift = (lambda q: GaussianRational(q)) if ctx.exact else (lambda q: complex(float(q)))
        ctx.zero = ctx.lift(0)
        ctx.one = ctx.lift(1)
        ctx.lam = tuple(ctx._coerce(v) for v in lam_values)
        if len(ctx.lam) != ctx.nletters:
            raise RejectionError("bad-functional", "one value per Cartan generator required")
        ctx.lam_d = as_rat(lam_d)
        ctx.sigma = tuple(int(s) for s in (omega_signs or [1] * ctx.nletters))
        if any(s not in (1, -1) for s in ctx.sigma):
            raise RejectionError("bad-omega", "omega signs must be +1 or -1")
        ctx.descriptor = descriptor or {}
        ctx._raise_cache = {}
        return ctx

    @staticmethod
    def loop_parabolic(alg: FiniteAlgebra, noncompact, lam_loop_h, lam_c=0,
                       mode=NATURAL_PARABOLIC, exact=True, eps=Scalar.DEFAULT_EPS,
                       descriptor=None):
        """Loop-token context over a finite algebra with a compact/noncompact split.

        ``noncompact`` is the set of noncompact positive roots (omega picks
        up a -1 on those); ``lam_loop_h(deg, i)`` returns the functional on
        z^deg (x) h_{i+1}; ``lam_c`` its value on the central element.
        """
        ctx = FormContext._new()
        ctx.mode = mode
        if mode not in (NATURAL_PARABOLIC, EXCEPTIONAL_PARABOLIC):
            raise RejectionError("bad-mode", f"unknown parabolic mode {mode!r}")
        ctx.alg = alg
        ctx.exact = bool(exact)
        ctx.eps = float(eps)
        ctx.lift = (lambda q: GaussianRational(q)) if ctx.exact else (lambda q: complex(float(q)))
        ctx.zero = ctx.lift(0)
        ctx.one = ctx.lift(1)
        ctx.noncompact = frozenset(noncompact)
        ctx.eps_sign = {r: (-1 if r in ctx.noncompact else 1) for r in alg.pos}
        ctx._lam_loop_raw = lam_loop_h
        ctx.lam_c = ctx._coerce(lam_c)
        ctx.descriptor = descriptor or {}
        ctx._act_cache = {}
        ctx._lam_h_cache = {}
        return ctx

    # -- scalar plumbing ---------------------------------------------------

    def _coerce(self, v):
        if isinstance(v, Scalar):
            if self.exact and not v.exact:
                raise RejectionError("inexact-input", "approximate scalar in an exact context")
            return v.val if self.exact else complex(v)
        if isinstance(v, GaussianRational):
            return v if self.exact else complex(v)
        if isinstance(v, complex):
            if self.exact:
                raise RejectionError("inexact-input", "complex double in an exact context")
            return v
        return self.lift(as_rat(v))

    def conj(self, x):
        return x.conj() if self.exact else x.conjugate()

    def is_zero(self, x) -> bool:
        if self.exact:
            return x.is_zero()
        return abs(x) <= self.eps

    def _lam_loop_h(self, deg, i):
        key = (deg, i)
        out = self._lam_h_cache.get(key)
        if out is None:
            out = self._coerce(self._lam_loop_raw(deg, i))
            self._lam_h_cache[key] = out
        return out

    # -- words --------------------------------------------------------------

    def word_drop(self, word):
        """Sum of the simple-root coordinates removed by the word."""
        if self.mode == STANDARD_BOREL:
            drop = [0] * self.nletters
            for i in word:
                drop[i] += 1
            return tuple(drop)
        drop = [0] * self.alg.rank
        for (_, r) in word:
            for t, c in enumerate(self.alg.pos[r]):
                drop[t] += c
        return tuple(drop)

    def word_degree(self, word):
        """Total loop degree of the word's tokens."""
        if self.mode == STANDARD_BOREL:
            return -sum(1 for i in word if i == 0) if self.affine else 0
        return sum(k for (k, _) in word)

    def token_sort_key(self, t):
        return t if self.mode != STANDARD_BOREL else (0, t)


# -- straightening: standard Borel mode ---------------------------------------


def raise_once(ctx: FormContext, j: int, word):
    """e_j applied to (word)v as a combination of shorter words.

    Every occurrence of f_j in the word contributes the word with that
    letter removed, weighted by the h_j-eigenvalue of everything to its
    right: lam(h_j) - sum_{s>t} A[j][word_s].
    """
    if ctx.mode != STANDARD_BOREL:
        raise RejectionError("bad-mode", "raise_once is a standard-Borel operation")
    key = (j, word)
    hit = ctx._raise_cache.get(key)
    if hit is not None:
        return hit
    row = ctx.rows[j]
    out = []
    suffix = ctx.zero
    # walk right to left, accumulating the root drop to the right
    pending = []
    for t in range(len(word) - 1, -1, -1):
        if word[t] == j:
            pending.append((t, suffix))
        suffix = suffix + ctx.lift(Q(row[word[t]]))
    full = ctx.lam[j]
    for t, sfx in pending:
        coeff = full - sfx
        if not ctx.is_zero(coeff):
            out.append((word[:t] + word[t + 1:], coeff))
    ctx._raise_cache[key] = out
    return out


def _weight_eval(ctx: FormContext, j: int, word):
    """(lam - drop(word))(h_j)."""
    row = ctx.rows[j]
    total = ctx.lam[j]
    for i in word:
        total = total - ctx.lift(Q(row[i]))
    return total


# -- straightening: loop-parabolic mode ----------------------------------------


def _act(ctx: FormContext, x, seq):
    """x (in the parabolic) applied to (seq)v: dict sequence -> coefficient.

    x is ("E", deg, posindex), ("H", deg, cartan index 0-based) or ("C",).
    """
    key = (x, seq)
    hit = ctx._act_cache.get(key)
    if hit is not None:
        return hit
    alg = ctx.alg
    out = {}

    def add(s, c):
        w = out.get(s)
        w = c if w is None else w + c
        if ctx.is_zero(w):
            out.pop(s, None)
        else:
            out[s] = w

    if not seq:
        kind = x[0]
        if kind == "C":
            val = ctx.lam_c
        elif kind == "H":
            val = ctx._lam_loop_h(x[1], x[2])
        else:  # raising vectors annihilate the highest weight vector
            val = ctx.zero
        res = {(): val} if not ctx.is_zero(val) else {}
        ctx._act_cache[key] = res
        return res

    t, rest = seq[0], seq[1:]
    k, r = t
    beta = alg.pos[r]
    # commute x past the leading token, then let it act on the tail
    for s, c in _act(ctx, x, rest).items():
        add((t,) + s, c)
    kind = x[0]
    if kind == "H":
        j, i = x[1], x[2]
        w = alg.root_on_coroot(beta, i)
        if w:
            add(((k + j, r),) + rest, ctx.lift(Q(-w)))
    elif kind == "E":
        j, a = x[1], x[2]
        alpha = alg.pos[a]
        if alpha == beta:
            # z^j E_a . z^k F_a -> z^(j+k) H_a + cocycle
            for i, cc in enumerate(alg.coroot(alpha)):
                if cc != 0:
                    for s, c in _act(ctx, ("H", j + k, i), rest).items():
                        add(s, ctx.lift(cc) * c)
            if j == -k and j != 0 and not ctx.is_zero(ctx.lam_c):
                coc = ctx.lift(Q(j) * 2 / alg.root_norm(alpha)) * ctx.lam_c
                for s, c in _coeff_items(rest, ctx.one):
                    add(s, coc * c)
        else:
            diff = tuple(p - q for p, q in zip(alpha, beta))
            negbeta = tuple(-q for q in beta)
            if diff in alg.pos_index:
                n = alg.nconst[(alpha, negbeta)]
                for s, c in _act(ctx, ("E", j + k, alg.pos_index[diff]), rest).items():
                    add(s, ctx.lift(n) * c)
            else:
                ndiff = tuple(-p for p in diff)
                if ndiff in alg.pos_index:
                    n = alg.nconst[(alpha, negbeta)]
                    add(((j + k, alg.pos_index[ndiff]),) + rest, ctx.lift(n))
    ctx._act_cache[key] = out
    return out


def _coeff_items(seq, coeff):
    return [(seq, coeff)]


# -- the contravariant form -----------------------------------------------------


def apply_raising(ctx: FormContext, g, state: dict) -> dict:
    """One raising operator applied to a combination {word: coeff}."""
    out = {}
    if ctx.mode == STANDARD_BOREL:
        j = g
        for word, c in state.items():
            for w2, k in raise_once(ctx, j, word):
                v = out.get(w2)
                v = c * k if v is None else v + c * k
                if ctx.is_zero(v):
                    out.pop(w2, None)
                else:
                    out[w2] = v
        return out
    for word, c in state.items():
        for w2, k in _act(ctx, g, word).items():
            v = out.get(w2)
            v = c * k if v is None else v + c * k
            if ctx.is_zero(v):
                out.pop(w2, None)
            else:
                out[w2] = v
    return out


def form_value(ctx: FormContext, u, w):
    """H(u, w): apply the raising factors of omega(w) to u, read the
    coefficient of the empty word.  Blocks of different weight drop pair
    to zero."""
    if ctx.word_drop(u) != ctx.word_drop(w):
        return ctx.zero
    state = {u: ctx.one}
    if ctx.mode == STANDARD_BOREL:
        sign = 1
        for j in w:
            sign *= ctx.sigma[j]
            state = apply_raising(ctx, j, state)
            if not state:
                break
    else:
        sign = 1
        for (k, r) in w:
            sign *= ctx.eps_sign[ctx.alg.pos[r]]
            state = apply_raising(ctx, ("E", -k, r), state)
            if not state:
                break
    val = state.get((), ctx.zero)
    for word in state:
        if word != ():
            raise InternalError("nonzero residue outside the highest weight line")
    return val if sign == 1 else -val


# -- verdicts ---------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    kind: str  # positive_definite | positive_semidefinite | indefinite
    rank: int
    witness: tuple | None
    exact: bool

    def is_psd(self) -> bool:
        return self.kind != "indefinite"

    def to_json(self):
        out = {"kind": self.kind, "rank": self.rank, "exact": self.exact}
        if self.witness is not None:
            out["witness"] = [scalar_to_json(x) for x in self.witness]
        return out


def _entry(x, exact):
    if isinstance(x, Scalar):
        return x.val if exact else complex(x)
    if isinstance(x, GaussianRational):
        return x if exact else complex(x)
    if exact:
        return GaussianRational(as_rat(x))
    return complex(x)


def _entry_exact(x) -> bool:
    if isinstance(x, Scalar):
        return x.exact
    if isinstance(x, (complex, float)):
        return False
    return True


def psd_verdict(matrix, eps=Scalar.DEFAULT_EPS) -> Verdict:
    """Exact Hermitian LDL* with diagonal pivoting.

    Positive definite iff full rank with positive pivots; semidefinite if
    elimination exhausts the matrix with nonnegative pivots; otherwise an
    explicit witness x with x* M x < 0 is returned (exact on the exact
    path).  Approximate inputs use eps thresholds and flag the verdict.
    """
    n = len(matrix)
    exact = all(_entry_exact(x) for row in matrix for x in row)
    a = [[_entry(x, exact) for x in row] for row in matrix]
    conj = (lambda x: x.conj()) if exact else (lambda x: x.conjugate())
    is_zero = (lambda x: x.is_zero()) if exact else (lambda x: abs(x) <= eps)
    for i in range(n):
        for j in range(n):
            if not is_zero(a[i][j] - conj(a[j][i])):
                raise RejectionError("not-hermitian", f"matrix is not Hermitian at {(i, j)}")

    def real(x):
        return x.re if exact else x.real

    one = GR_ONE if exact else 1.0 + 0j
    zero = GR_ZERO if exact else 0.0 + 0j
    vecs = [[one if i == j else zero for j in range(n)] for i in range(n)]
    remaining = list(range(n))
    rank = 0

    def witness_vec(v):
        return Verdict("indefinite", rank, tuple(v), exact)

    while remaining:
        negs = [i for i in remaining if real(a[i][i]) < (0 if exact else -eps)]
        if negs:
            return witness_vec(vecs[negs[0]])
        pos = [i for i in remaining if real(a[i][i]) > (0 if exact else eps)]
        if not pos:
            # zero diagonal: Hermitian psd forces the whole block to vanish
            for i in remaining:
                for j in remaining:
                    if i != j and not is_zero(a[i][j]):
                        # x = V_j - A[i][j] V_i gives x* M x = -2 |A[i][j]|^2
                        v = [xj - a[i][j] * xi for xj, xi in zip(vecs[j], vecs[i])]
                        return witness_vec(v)
            kind = "positive_definite" if rank == n else "positive_semidefinite"
            return Verdict(kind, rank, None, exact)
        p = max(pos, key=lambda i: (real(a[i][i]), -i))
        d = a[p][p]
        remaining.remove(p)
        rank += 1
        for i in remaining:
            ci = a[p][i] / d  # V'_i = V_i - (A[p][i]/d) V_p
            if not is_zero(ci):
                vecs[i] = [x - ci * y for x, y in zip(vecs[i], vecs[p])]
        newa = {(i, j): a[i][j] - a[i][p] * a[p][j] / d for i in remaining for j in remaining}
        for (i, j), v in newa.items():
            a[i][j] = v
    kind = "positive_definite" if rank == n else "positive_semidefinite"
    return Verdict(kind, rank, None, exact)


def kernel_basis(matrix, eps=Scalar.DEFAULT_EPS):
    """Exact nullspace basis of a (Hermitian) block matrix."""
    from .linalg import nullspace

    n = len(matrix)
    if n == 0:
        return []
    exact = all(_entry_exact(x) for row in matrix for x in row)
    rows = [[_entry(x, exact) for x in row] for row in matrix]
    if exact:
        return nullspace(rows, GR_ZERO, GR_ONE)
    # thresholded elimination on the approximate path
    cleaned = [[0j if abs(x) <= eps else x for x in row] for row in rows]
    return nullspace(cleaned, 0j, 1 + 0j)


# -- blocks ------------------------------------------------------------------------


@dataclass(frozen=True)
class GramBlock:
    drop: tuple
    degree: object  # total degree (standard Borel) or None for pooled windows
    window: object  # degree window bound for parabolic modes, else None
    words: tuple
    matrix: tuple
    verdict: Verdict
    kernel: tuple
    exact: bool

    @property
    def dim(self) -> int:
        return len(self.words)

    def to_json(self, ctx=None):
        return {
            "drop": list(self.drop),
            "degree": self.degree,
            "window": self.window,
            "dim": self.dim,
            "words": [_word_json(w) for w in self.words],
            "matrix": [[scalar_to_json(x) for x in row] for row in self.matrix],
            "verdict": self.verdict.to_json(),
            "kernel": [[scalar_to_json(x) for x in v] for v in self.kernel],
            "exact": self.exact,
        }


def _word_json(word):
    out = []
    for t in word:
        if isinstance(t, tuple):
            out.append({"deg": t[0], "root": t[1]})
        else:
            out.append(t)
    return out


def _multiset_permutations(items):
    """Distinct arrangements of a sorted multiset, lexicographically."""
    if not items:
        yield ()
        return
    seen = set()
    for i, x in enumerate(items):
        if x in seen:
            continue
        seen.add(x)
        rest = items[:i] + items[i + 1:]
        for tail in _multiset_permutations(rest):
            yield (x,) + tail


def enumerate_words(ctx: FormContext, drop, window=None, cap=DEFAULT_BLOCK_CAP):
    """All spanning words of a weight block, in canonical order.

    Standard Borel: all arrangements of the multiset f_0^(k_0)..f_l^(k_l).
    Parabolic: all arrangements of every token multiset with the given
    root drop and degrees within [-window, window].
    """
    if ctx.mode == STANDARD_BOREL:
        letters = []
        for i, k in enumerate(drop):
            letters.extend([i] * k)
        words = list(_multiset_permutations(tuple(letters)))
        if len(words) > cap:
            raise ResourceError(f"block at drop {drop} has {len(words)} words, cap is {cap}")
        return words
    if window is None:
        raise RejectionError("window-required", "parabolic blocks need a degree window")
    alg = ctx.alg
    tokens = [(k, r) for r in range(len(alg.pos)) for k in range(-window, window + 1)]
    tokens.sort()
    target = tuple(drop)
    multisets = []

    def dfs(start, rem, chosen):
        if all(c == 0 for c in rem):
            multisets.append(tuple(chosen))
            return
        for t in range(start, len(tokens)):
            k, r = tokens[t]
            root = alg.pos[r]
            nxt = tuple(a - b for a, b in zip(rem, root))
            if all(c >= 0 for c in nxt):
                chosen.append(tokens[t])
                dfs(t, nxt, chosen)
                chosen.pop()

    dfs(0, target, [])
    words = []
    for ms in multisets:
        words.extend(_multiset_permutations(ms))
        if len(words) > cap:
            raise ResourceError(
                f"block at drop {drop}, window {window} exceeds the word cap {cap}"
            )
    words.sort()
    return words


def gram_block(ctx: FormContext, drop, window=None, cap=DEFAULT_BLOCK_CAP,
               with_kernel=True) -> GramBlock:
    """Assemble, check Hermitian symmetry, and classify one weight block."""
    words = enumerate_words(ctx, drop, window, cap)
    n = len(words)
    mat = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            mat[i][j] = form_value(ctx, words[i], words[j])
    for i in range(n):
        for j in range(n):
            if not ctx.is_zero(mat[i][j] - ctx.conj(mat[j][i])):
                raise RejectionError(
                    "form-not-hermitian",
                    "H(u,w) != conj(H(w,u)); the functional violates the "
                    f"consistency condition at word pair {(i, j)}",
                )
    verdict = psd_verdict(mat, eps=ctx.eps)
    kernel = tuple(tuple(v) for v in kernel_basis(mat, eps=ctx.eps)) if with_kernel else ()
    degree = None
    if ctx.mode == STANDARD_BOREL:
        degree = -drop[0] if (ctx.affine and drop) else 0
    return GramBlock(
        drop=tuple(drop),
        degree=degree,
        window=window if ctx.mode != STANDARD_BOREL else None,
        words=tuple(words),
        matrix=tuple(tuple(row) for row in mat),
        verdict=verdict,
        kernel=kernel,
        exact=ctx.exact,
    )


# -- omega on loop elements ---------------------------------------------------------


def apply_omega(ctx: FormContext, x):
    """The context's antilinear anti-involution on a LoopElement."""
    from .affine import LoopElement

    alg = x.alg
    terms = {}
    for (deg, idx), v in x.terms.items():
        r = alg.root_of(idx)
        cv = v.conj()
        if r is None:
            terms[(-deg, idx)] = terms.get((-deg, idx), GR_ZERO) + cv
            continue
        if r in alg.pos_index:
            sign = _omega_sign(ctx, r)
            tgt = alg.f_index(r)
        else:
            rp = tuple(-c for c in r)
            sign = _omega_sign(ctx, rp)
            tgt = alg.e_index(rp)
        val = cv if sign == 1 else -cv
        terms[(-deg, tgt)] = terms.get((-deg, tgt), GR_ZERO) + val
    return LoopElement(alg, terms, c=x.c.conj(), d=x.d.conj())


def _omega_sign(ctx: FormContext, pos_root) -> int:
    if ctx.mode == STANDARD_BOREL:
        off = 1 if ctx.affine else 0
        sig = 1
        for i, c in enumerate(pos_root):
            if ctx.sigma[i + off] == -1 and c % 2 == 1:
                sig = -sig
        return sig
    return ctx.eps_sign[pos_root]
