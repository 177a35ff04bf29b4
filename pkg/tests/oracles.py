"""Independent brute-force oracles.

These deliberately share no code with the package engine: sl2 norms come
from PBW normal ordering in the enveloping algebra by raw term rewriting,
and definiteness verdicts for small Hermitian matrices come from principal
minors.  Engine results are tested against these.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from kmx.scalars import GaussianRational


def pbw_normal_form(word):
    """Rewrite a word over {'f','h','e'} into f..f h..h e..e normal order.

    Rules: ef -> fe + h,  eh -> he - 2e,  hf -> fh - 2f.  Returns a dict
    mapping normal words to rational coefficients.
    """
    state = {tuple(word): Fraction(1)}
    done = {}
    order = {"f": 0, "h": 1, "e": 2}
    while state:
        w, c = state.popitem()
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if order[a] <= order[b]:
                continue
            head, tail = w[:i], w[i + 2:]
            swapped = head + (b, a) + tail
            state[swapped] = state.get(swapped, Fraction(0)) + c
            if (a, b) == ("e", "f"):
                extra = head + ("h",) + tail
                state[extra] = state.get(extra, Fraction(0)) + c
            elif (a, b) == ("e", "h"):
                extra = head + ("e",) + tail
                state[extra] = state.get(extra, Fraction(0)) - 2 * c
            elif (a, b) == ("h", "f"):
                extra = head + ("f",) + tail
                state[extra] = state.get(extra, Fraction(0)) - 2 * c
            break
        else:
            done[w] = done.get(w, Fraction(0)) + c
    return {w: c for w, c in done.items() if c != 0}


def sl2_shapovalov_norm(m, k: int) -> Fraction:
    """H(f^k v, f^k v) for sl2 highest weight m, via normal ordering of e^k f^k.

    The projection keeps normal words without f; a 1-dimensional functional
    sends h^b e^c to m^b 0^c.
    """
    nf = pbw_normal_form(("e",) * k + ("f",) * k)
    total = Fraction(0)
    for w, c in nf.items():
        if "f" in w or "e" in w:
            continue
        total += c * Fraction(m) ** len(w)
    return total


def _conj(x):
    if isinstance(x, GaussianRational):
        return x.conj()
    return x.conjugate() if isinstance(x, complex) else x


def _det(mat):
    """Exact determinant by cofactor expansion (tiny matrices only)."""
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    total = None
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        if sign < 0:
            term = -term
        total = term if total is None else total + term
        sign = -sign
    return total


def psd_by_minors(mat):
    """'positive_definite' / 'positive_semidefinite' / 'indefinite' via minors.

    Hermitian matrices are psd iff every principal minor is >= 0 and
    definite iff the leading ones are all > 0.  Only sensible for dim <= 4.
    """
    n = len(mat)
    idx = range(n)

    def real(x):
        if isinstance(x, GaussianRational):
            assert x.im == 0
            return x.re
        return x

    minors = {}
    for r in range(1, n + 1):
        for sub in combinations(idx, r):
            m = [[mat[i][j] for j in sub] for i in sub]
            minors[sub] = real(_det(m))
    if any(v < 0 for v in minors.values()):
        return "indefinite"
    leading = [minors[tuple(range(r))] for r in range(1, n + 1)]
    if all(v > 0 for v in leading):
        return "positive_definite"
    return "positive_semidefinite"
