"""Ground-type selection for exact rational arithmetic.

Every exact number in this package is an arbitrary-precision rational.  The
hot loops (commutator straightening, Gram assembly, Hermitian LDL*) spend
nearly all of their time in rational arithmetic, so the rational type is
pluggable: when gmpy2 is importable its GMP-backed ``mpq`` is used as the
compiled core, otherwise the stdlib ``fractions.Fraction`` serves as the
pure-Python fallback.  Both normalize automatically (gcd(num, den) = 1,
den > 0) and expose the same arithmetic surface, so the choice is confined
to this module.

Set ``KMX_GROUND=fractions`` or ``KMX_GROUND=gmpy2`` to force a backend;
``benchmarks/bench_ground.py`` measures the difference on a Gram workload.
"""

from __future__ import annotations

import os
from fractions import Fraction

_requested = os.environ.get("KMX_GROUND", "auto")

if _requested not in ("auto", "gmpy2", "fractions"):
    raise RuntimeError(
        f"KMX_GROUND={_requested!r} not recognized (use 'gmpy2' or 'fractions')"
    )

if _requested in ("auto", "gmpy2"):
    try:
        from gmpy2 import mpq as Q  # type: ignore[import-not-found]

        GROUND = "gmpy2"
    except ImportError:
        if _requested == "gmpy2":
            raise RuntimeError("KMX_GROUND=gmpy2 requested but gmpy2 is not installed")
        Q = Fraction
        GROUND = "fractions"
else:
    Q = Fraction
    GROUND = "fractions"

ZERO = Q(0)
ONE = Q(1)
TWO = Q(2)


def as_rat(x):
    """Coerce an int, string 'p/q', Fraction, or ground rational to the ground type."""
    if isinstance(x, (int, str, Fraction)):
        return Q(x)
    if type(x) is type(ZERO):
        return x
    # a previously built rational from the other backend, or anything Fraction accepts
    return Q(Fraction(x))


def rat_str(x) -> str:
    """Canonical string form: 'p/q', or just 'p' when the denominator is 1."""
    return str(x)
