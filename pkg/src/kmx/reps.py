"""The three unitarizable families and the verification driver.

* integrable: standard Borel of an affine algebra, compact anti-involution,
  nonnegative integer values on h_0..h_l;
* elementary: natural parabolic over the su(n,1) loop algebra, functional
  built from finitely many highest weights and unit phases raised to the
  loop degree;
* exceptional: the same parabolic in matrix form, functional reading the
  (0,0) matrix entry against the moment sequence of a positive measure on
  the circle.

``verify_unitarity`` sweeps all weight blocks up to a depth (and degree
window, for parabolic contexts) and aggregates exact verdicts.  A single
indefinite block is conclusive non-unitarity; all-semidefinite truncations
are reported as depth-qualified evidence.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ._ground import Q, ZERO, ONE, as_rat, rat_str
from .affine import AffineAlgebra
from .errors import RejectionError, ResourceError
from .finite_lie import hermitian_split_su_n1, matrix_realization
from .scalars import GR_ONE, GaussianRational, Scalar, scalar_from_json, scalar_to_json
from .verma import (
    DEFAULT_BLOCK_CAP,
    EXCEPTIONAL_PARABOLIC,
    FormContext,
    NATURAL_PARABOLIC,
    STANDARD_BOREL,
    GramBlock,
    _weight_eval,
    apply_raising,
    form_value,
    gram_block,
)

CONVENTIONS = {
    "invariant_form": "normalized so the highest root has squared length 2",
    "killing_form": "equals 2 * (dual Coxeter number) * the normalized form; "
                    "the central cocycle and hence the level follow the normalized form",
    "lambda_d_default": "0",
}


# -- integrable ------------------------------------------------------------------


@dataclass(frozen=True)
class IntegrableWeight:
    """Values m_0..m_l on the affine Cartan generators, plus the d-value."""

    m: tuple
    d: object = ZERO

    @staticmethod
    def make(values, d=0):
        return IntegrableWeight(tuple(int(v) for v in values), as_rat(d))


def integrable_functional(aff: AffineAlgebra, w: IntegrableWeight) -> FormContext:
    """Standard-Borel context with the compact anti-involution.

    Rejects any value outside the nonnegative integers: integrability
    demands m_i in Z_+."""
    if len(w.m) != aff.rank:
        raise RejectionError("bad-functional", f"need {aff.rank} values, got {len(w.m)}")
    for i, v in enumerate(w.m):
        if v < 0 or v != int(v):
            raise RejectionError(
                "not-integrable", f"m_{i} = {v} is not a nonnegative integer", (i,)
            )
    desc = {
        "type": "integrable",
        "m": [int(v) for v in w.m],
        "d": rat_str(w.d),
        "level": rat_str(sum((mk * Q(v) for mk, v in zip(aff.marks_dual, w.m)), ZERO)),
    }
    return FormContext.standard_borel(
        aff.gcm.entries, [Q(v) for v in w.m], lam_d=w.d, descriptor=desc, affine=True
    )


def highest_weight_functional(gcm_rows, values, d=0, omega_signs=None, affine=True,
                              descriptor=None) -> FormContext:
    """General (not necessarily dominant) standard-Borel functional.

    Used for non-unitary witnesses and for the finite-algebra reductions;
    ``omega_signs`` twists the anti-involution for noncompact real forms."""
    desc = descriptor or {"type": "highest_weight", "values": [rat_str(as_rat(v)) for v in values]}
    return FormContext.standard_borel(
        gcm_rows, [as_rat(v) for v in values], lam_d=d, omega_signs=omega_signs,
        descriptor=desc, affine=affine,
    )


# -- elementary ------------------------------------------------------------------


@dataclass(frozen=True)
class ElementarySpec:
    """Functional data: N highest weights on the Borel of su(n,1), with unit
    phases.  ``points`` holds one unit scalar per weight, raised to the loop
    degree (an evaluation-point family); ``table`` optionally overrides
    single (i, k) entries and is deliberately not symmetry-checked at build
    time, so inconsistent tables surface through the consistency check.
    """

    weights: tuple  # tuple of tuples of rationals, values on h_1..h_n
    points: tuple  # tuple of Scalar, |C_i| = 1
    table: tuple = ()  # ((i, k, Scalar), ...) overrides
    c: object = ZERO
    d: object = ZERO
    declared_unitarizable: bool = True

    @staticmethod
    def make(weights, points, table=(), c=0, d=0, declared_unitarizable=True):
        ws = tuple(tuple(as_rat(x) for x in w) for w in weights)
        pts = tuple(p if isinstance(p, Scalar) else Scalar(p) for p in points)
        tab = tuple((int(i), int(k), v if isinstance(v, Scalar) else Scalar(v)) for (i, k, v) in table)
        return ElementarySpec(ws, pts, tab, as_rat(c), as_rat(d), declared_unitarizable)

    def phase(self, i: int, k: int) -> Scalar:
        for (ti, tk, v) in self.table:
            if ti == i and tk == k:
                return v
        return self.points[i] ** k


def elementary_functional(spec: ElementarySpec, n: int) -> FormContext:
    """Natural-parabolic context over su(n,1) with the sign-twisted omega."""
    if len(spec.weights) != len(spec.points):
        raise RejectionError("bad-functional", "one evaluation point per weight required")
    if not spec.weights:
        raise RejectionError("bad-functional", "at least one weight is required")
    for w in spec.weights:
        if len(w) != n:
            raise RejectionError("bad-functional", f"each weight needs {n} values on the Cartan")
    for idx, p in enumerate(spec.points):
        if not p.is_unit_modulus():
            raise RejectionError(
                "phase-not-unimodular", f"|C_{idx + 1}| != 1 (evaluation points must be unit)", (idx,)
            )
    for (ti, tk, v) in spec.table:
        if not v.is_unit_modulus():
            raise RejectionError("phase-not-unimodular", f"|C| != 1 in table at {(ti, tk)}", (ti, tk))
    alg, split = hermitian_split_su_n1(n)
    exact = all(p.exact for p in spec.points) and all(v.exact for (_, _, v) in spec.table)

    def lam_h(deg, i):
        total = Scalar(GaussianRational(0))
        for t, w in enumerate(spec.weights):
            total = total + spec.phase(t, deg) * Scalar(GaussianRational(w[i]))
        return total

    desc = {
        "type": "elementary",
        "n": n,
        "weights": [[rat_str(x) for x in w] for w in spec.weights],
        "points": [scalar_to_json(p) for p in spec.points],
        "c": rat_str(spec.c),
        "d": rat_str(spec.d),
        "declared_unitarizable": spec.declared_unitarizable,
    }
    return FormContext.loop_parabolic(
        alg, split.noncompact_pos, lam_h, lam_c=Q(spec.c),
        mode=NATURAL_PARABOLIC, exact=exact, descriptor=desc,
    )


# -- exceptional -----------------------------------------------------------------


@dataclass(frozen=True)
class MomentSequence:
    """Fourier moments c_k of a positive measure on the circle.

    Stored for k >= 0; c_{-k} is the conjugate.  ``support`` bounds the
    indices supplied and sets how far the Toeplitz necessary condition is
    checked.  Infinite support of the underlying measure is a declared
    attribute, invisible at any finite truncation.
    """

    moments: tuple  # ((k, Scalar), ...) for k >= 0
    support: int
    declared_infinitely_supported: bool = True

    @staticmethod
    def make(moments, support=None, declared_infinitely_supported=True):
        norm = []
        for k, v in (moments.items() if isinstance(moments, dict) else moments):
            k = int(k)
            if k < 0:
                raise RejectionError("bad-moments", "supply moments for k >= 0 only")
            norm.append((k, v if isinstance(v, Scalar) else Scalar(v)))
        norm.sort()
        sup = support if support is not None else (max((k for k, _ in norm), default=0))
        return MomentSequence(tuple(norm), int(sup), declared_infinitely_supported)

    def c(self, k: int) -> Scalar:
        for kk, v in self.moments:
            if kk == abs(k):
                return v.conj() if k < 0 else v
        return Scalar(GaussianRational(0))

    def toeplitz(self, size: int):
        return [[self.c(i - j) for j in range(size)] for i in range(size)]


def validate_moments(mom: MomentSequence):
    """Herglotz necessary condition: Toeplitz [c_{i-j}] psd up to the support bound."""
    from .verma import psd_verdict

    c0 = mom.c(0)
    if (c0.exact and (not c0.val.is_real() or c0.val.re <= 0)) or (
        not c0.exact and (abs(c0.val.imag) > c0.eps or c0.val.real <= 0)
    ):
        raise RejectionError("bad-moments", "c_0 must be real and positive")
    for size in range(1, mom.support + 2):
        verdict = psd_verdict(mom.toeplitz(size))
        if verdict.kind == "indefinite":
            raise RejectionError(
                "toeplitz-not-psd",
                f"Toeplitz matrix of size {size} is indefinite; "
                "no positive measure has these moments",
                (size,),
            )


def exceptional_functional(mom: MomentSequence, n: int) -> FormContext:
    """Exceptional-parabolic context: functional -integral(a_00) d(mu).

    The functional reads the (0,0) entry of the matrix realization of
    su(n,1) against the moments; it vanishes on the strictly upper part and
    on the traceless u(n) block."""
    validate_moments(mom)
    alg, split = hermitian_split_su_n1(n)
    phi = matrix_realization(alg)
    h00 = [phi[alg.h_index(i + 1)][0][0] for i in range(n)]
    exact = all(v.exact for _, v in mom.moments)

    def lam_h(deg, i):
        if h00[i] == 0:
            return Scalar(GaussianRational(0))
        return -(mom.c(deg)) * Scalar(GaussianRational(h00[i]))

    desc = {
        "type": "exceptional",
        "n": n,
        "moments": {str(k): scalar_to_json(v) for k, v in mom.moments},
        "support": mom.support,
        "declared_infinitely_supported": mom.declared_infinitely_supported,
    }
    ctx = FormContext.loop_parabolic(
        alg, split.noncompact_pos, lam_h, lam_c=0,
        mode=EXCEPTIONAL_PARABOLIC, exact=exact, descriptor=desc,
    )
    ctx.matrix_realization = phi
    return ctx


# -- the unitarity driver -----------------------------------------------------------


@dataclass(frozen=True)
class UnitarityReport:
    context: dict
    depth: int
    window: object
    blocks: tuple
    overall: dict
    exact: bool
    skipped: tuple = ()

    def to_json(self):
        return {
            "context": self.context,
            "conventions": CONVENTIONS,
            "depth": self.depth,
            "window": self.window,
            "blocks": [b.to_json() for b in self.blocks],
            "skipped": [list(s) for s in self.skipped],
            "overall": self.overall,
            "exact": self.exact,
        }


def _drops_standard(nletters: int, depth: int):
    out = []

    def rec(prefix, rem):
        if len(prefix) == nletters:
            out.append(tuple(prefix))
            return
        for k in range(rem + 1):
            rec(prefix + [k], rem - k)

    rec([], depth)
    out.sort(key=lambda v: (sum(v), v))
    return out


def _drops_parabolic(ctx: FormContext, depth: int):
    alg = ctx.alg
    roots = sorted(alg.pos, key=lambda r: (sum(r), r))
    found = {tuple([0] * alg.rank)}

    def rec(start, current, height):
        for i in range(start, len(roots)):
            r = roots[i]
            h = sum(r)
            if height + h > depth:
                continue
            nxt = tuple(a + b for a, b in zip(current, r))
            found.add(nxt)
            rec(i, nxt, height + h)

    rec(0, tuple([0] * alg.rank), 0)
    return sorted(found, key=lambda v: (sum(v), v))


def verify_unitarity(ctx: FormContext, depth: int, window=None,
                     cap=DEFAULT_BLOCK_CAP, workers=None) -> UnitarityReport:
    """Sweep all weight blocks up to ``depth`` and classify each one.

    Parabolic contexts additionally need a token degree window.  Overall:
    non-unitary as soon as one block is indefinite (final at any
    truncation); otherwise unitary-up-to-depth when every block was
    semidefinite; inconclusive when caps skipped blocks."""
    if ctx.mode == STANDARD_BOREL:
        drops = _drops_standard(ctx.nletters, depth)
    else:
        if window is None:
            raise RejectionError("window-required", "parabolic sweeps need a degree window")
        drops = _drops_parabolic(ctx, depth)
    if workers is None:
        workers = max(1, int(os.environ.get("KMX_THREADS", "1")))

    blocks = {}
    skipped = []

    def run(drop):
        return drop, gram_block(ctx, drop, window=window, cap=cap)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run, d) for d in drops]
            for fut in futures:
                try:
                    drop, blk = fut.result()
                    blocks[drop] = blk
                except ResourceError as exc:
                    skipped.append((exc,))
    else:
        for d in drops:
            try:
                _, blk = run(d)
                blocks[d] = blk
            except ResourceError as exc:
                skipped.append((d, str(exc)))

    ordered = tuple(blocks[d] for d in sorted(blocks, key=lambda v: (sum(v), v)))
    bad = [b for b in ordered if b.verdict.kind == "indefinite"]
    if bad:
        overall = {
            "kind": "non_unitary",
            "witness_drop": list(bad[0].drop),
            "note": "an indefinite truncation certifies non-unitarity",
        }
    elif skipped:
        overall = {"kind": "inconclusive", "reason": "blocks exceeded the configured cap"}
    else:
        overall = {"kind": "unitary_up_to_depth", "depth": depth}
        if ctx.mode != STANDARD_BOREL:
            overall["note"] = (
                "semidefiniteness of a window truncation is evidence, not proof; "
                f"window = {window}"
            )
    return UnitarityReport(
        context=dict(ctx.descriptor),
        depth=depth,
        window=window,
        blocks=ordered,
        overall=overall,
        exact=ctx.exact,
        skipped=tuple(skipped),
    )


# -- the consistency condition -------------------------------------------------------


def _alphabet(ctx: FormContext, degree_bound: int):
    if ctx.mode == STANDARD_BOREL:
        out = []
        for j in range(ctx.nletters):
            out.extend([("e", j), ("f", j), ("h", j)])
        return out
    out = [("C",)]
    for r in range(len(ctx.alg.pos)):
        for k in range(-degree_bound, degree_bound + 1):
            out.extend([("E", k, r), ("F", k, r)])
    for i in range(ctx.alg.rank):
        for k in range(-degree_bound, degree_bound + 1):
            out.append(("H", k, i))
    return out


def _apply_generator(ctx: FormContext, g, state):
    if ctx.mode == STANDARD_BOREL:
        kind, j = g
        if kind == "f":
            return {(j,) + w: c for w, c in state.items()}
        if kind == "e":
            return apply_raising(ctx, j, state)
        out = {}
        for w, c in state.items():
            v = c * _weight_eval(ctx, j, w)
            if not ctx.is_zero(v):
                out[w] = v
        return out
    if g[0] == "F":
        return {((g[1], g[2]),) + w: c for w, c in state.items()}
    return apply_raising(ctx, g, state)


def _omega_generator(ctx: FormContext, g):
    """Image of one generator under omega, as (generator, +-1 sign)."""
    if ctx.mode == STANDARD_BOREL:
        kind, j = g
        if kind == "h":
            return ("h", j), 1
        sign = ctx.sigma[j]
        return (("f", j) if kind == "e" else ("e", j)), sign
    kind = g[0]
    if kind == "C":
        return g, 1
    if kind == "H":
        return ("H", -g[1], g[2]), 1
    sign = ctx.eps_sign[ctx.alg.pos[g[2]]]
    if kind == "E":
        return ("F", -g[1], g[2]), sign
    return ("E", -g[1], g[2]), sign


def functional_on_word(ctx: FormContext, gens):
    """lambda(beta(x_1 ... x_m)): the highest-weight-line coefficient."""
    state = {(): ctx.one}
    for g in reversed(gens):
        state = _apply_generator(ctx, g, state)
        if not state:
            return ctx.zero
    return state.get((), ctx.zero)


@dataclass(frozen=True)
class ConsistencyResult:
    ok: bool
    samples: int
    counterexample: tuple | None
    lhs: object = None
    rhs: object = None


def consistency_check(ctx: FormContext, samples: int = 200, max_len: int = 4,
                      degree_bound: int = 2, seed: int = 7) -> ConsistencyResult:
    """Sample words u and compare lambda(beta(u)) with conj(lambda(beta(omega u)))."""
    rng = random.Random(seed)
    alphabet = _alphabet(ctx, degree_bound)
    for trial in range(samples):
        length = rng.randint(1, max_len)
        word = tuple(rng.choice(alphabet) for _ in range(length))
        lhs = functional_on_word(ctx, word)
        sign = 1
        mapped = []
        for g in reversed(word):
            im, s = _omega_generator(ctx, g)
            sign *= s
            mapped.append(im)
        rhs = functional_on_word(ctx, tuple(mapped))
        if sign == -1:
            rhs = -rhs
        rhs = ctx.conj(rhs)
        if not ctx.is_zero(lhs - rhs):
            return ConsistencyResult(False, trial + 1, word, lhs, rhs)
    return ConsistencyResult(True, samples, None)
