"""Exact scalars: rationals, Gaussian rationals, and a flagged float fallback.

The exact path works in Q(i): a ``GaussianRational`` is a pair of
arbitrary-precision rationals.  Conjugation is an involutive ring
automorphism and |z|^2 is a nonnegative rational, so Hermitian Gram
matrices over this field admit exact positive-semidefiniteness decisions.

``Scalar`` is the tagged union used at module boundaries: either an exact
GaussianRational or an approximate complex double carrying a tolerance.
Exact and approximate values never mix silently; any operation combining
them yields an approximate result and bumps a module-level downgrade
counter.
"""

from __future__ import annotations

from ._ground import Q, ZERO, ONE, as_rat, rat_str

_downgrades = 0


def downgrade_count() -> int:
    """Number of exact->approximate coercions since the last reset."""
    return _downgrades


def reset_downgrade_count() -> None:
    global _downgrades
    _downgrades = 0


def _record_downgrade() -> None:
    global _downgrades
    _downgrades += 1


class GaussianRational:
    """An element of Q(i), stored as exact real and imaginary rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_rat(re))
        object.__setattr__(self, "im", as_rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _gr(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _gr(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _gr(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _gr(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __truediv__(self, other):
        other = _gr(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _gr(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def inv(self) -> "GaussianRational":
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inv()
        out = GR_ONE
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self):
        """|z|^2 as an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other):
        other = _gr(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    # -- formatting ------------------------------------------------------

    def __str__(self) -> str:
        if self.im == 0:
            return rat_str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{rat_str(self.re)}{sign}{_imag_str(abs(self.im))}"

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _imag_str(im) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{rat_str(im)}i"


GR_ZERO = GaussianRational(0, 0)
GR_ONE = GaussianRational(1, 0)
GR_I = GaussianRational(0, 1)


def _gr(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, complex):
        return NotImplemented
    try:
        return GaussianRational(as_rat(x), ZERO)
    except (TypeError, ValueError):
        return NotImplemented


def parse_gaussian(s: str) -> GaussianRational:
    """Parse strings like '3/4', '-i', '2i', '1/2+1/3i', '1-2i'."""
    t = s.strip().replace(" ", "")
    if not t:
        raise ValueError("empty scalar string")
    if not t.endswith("i"):
        return GaussianRational(Q(t), ZERO)
    body = t[:-1]
    # split off a real part, if any: find the last +/- not at position 0
    # and not part of a '/.': rationals here never carry exponents.
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-":
            re_part, im_part = body[:pos], body[pos:]
            break
    else:
        re_part, im_part = "", body
    if im_part in ("", "+"):
        im = ONE
    elif im_part == "-":
        im = -ONE
    else:
        im = Q(im_part.lstrip("+"))
    re = Q(re_part) if re_part else ZERO
    return GaussianRational(re, im)


class Scalar:
    """Tagged union: exact GaussianRational, or complex double with tolerance."""

    __slots__ = ("val", "eps")

    DEFAULT_EPS = 1e-9

    def __init__(self, val, eps: float = 0.0):
        if isinstance(val, GaussianRational):
            object.__setattr__(self, "val", val)
            object.__setattr__(self, "eps", 0.0)
        elif isinstance(val, (complex, float)):
            object.__setattr__(self, "val", complex(val))
            object.__setattr__(self, "eps", float(eps) if eps else self.DEFAULT_EPS)
        elif isinstance(val, str):
            object.__setattr__(self, "val", parse_gaussian(val))
            object.__setattr__(self, "eps", 0.0)
        else:
            object.__setattr__(self, "val", GaussianRational(as_rat(val), ZERO))
            object.__setattr__(self, "eps", 0.0)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @property
    def exact(self) -> bool:
        return isinstance(self.val, GaussianRational)

    @staticmethod
    def approx(z: complex, eps: float = DEFAULT_EPS) -> "Scalar":
        return Scalar(complex(z), eps)

    # -- arithmetic with downgrade tracking ------------------------------

    def _pair(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        if self.exact and other.exact:
            return self.val, other.val, 0.0
        if self.exact != other.exact:
            _record_downgrade()
        eps = max(self.eps, other.eps, self.DEFAULT_EPS)
        return complex(self.val), complex(other.val), eps

    def __add__(self, other):
        a, b, eps = self._pair(other)
        return Scalar(a + b, eps)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, eps = self._pair(other)
        return Scalar(a - b, eps)

    def __rsub__(self, other):
        a, b, eps = self._pair(other)
        return Scalar(b - a, eps)

    def __mul__(self, other):
        a, b, eps = self._pair(other)
        return Scalar(a * b, eps)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.val, self.eps)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        return self * other.inv()

    def inv(self) -> "Scalar":
        if self.exact:
            return Scalar(self.val.inv())
        if abs(self.val) <= self.eps:
            raise ZeroDivisionError("inverse of (approximately) zero scalar")
        return Scalar(1.0 / self.val, self.eps)

    def __pow__(self, k: int):
        if self.exact:
            return Scalar(self.val ** k)
        return Scalar(self.val ** k, self.eps)

    def conj(self) -> "Scalar":
        if self.exact:
            return Scalar(self.val.conj())
        return Scalar(self.val.conjugate(), self.eps)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        if self.exact:
            return self.val.is_zero()
        return abs(self.val) <= self.eps

    def is_unit_modulus(self) -> bool:
        """|z| == 1, exactly on the exact path, within eps otherwise."""
        if self.exact:
            return self.val.abs2() == 1
        return abs(abs(self.val) - 1.0) <= self.eps

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        if self.exact and other.exact:
            return self.val == other.val
        eps = max(self.eps, other.eps, self.DEFAULT_EPS)
        return abs(complex(self.val) - complex(other.val)) <= eps

    def __hash__(self):
        if self.exact:
            return hash(self.val)
        return hash(self.val)

    def __complex__(self) -> complex:
        return complex(self.val)

    def __str__(self) -> str:
        if self.exact:
            return str(self.val)
        return f"~{self.val}"

    def __repr__(self) -> str:
        if self.exact:
            return f"Scalar({self.val!r})"
        return f"Scalar({self.val!r}, eps={self.eps!r})"


SC_ZERO = Scalar(GR_ZERO)
SC_ONE = Scalar(GR_ONE)


# -- JSON codecs ---------------------------------------------------------


def rational_to_json(x) -> str:
    return rat_str(x)


def rational_from_json(s) -> object:
    if isinstance(s, int):
        return Q(s)
    return Q(str(s))


def scalar_to_json(x):
    """Exact real -> 'p/q'; exact complex -> {re, im}; approx -> {approx, eps}."""
    if isinstance(x, Scalar):
        if x.exact:
            return scalar_to_json(x.val)
        return {"approx": [x.val.real, x.val.imag], "eps": x.eps}
    if isinstance(x, GaussianRational):
        if x.is_real():
            return rat_str(x.re)
        return {"re": rat_str(x.re), "im": rat_str(x.im)}
    if isinstance(x, complex):
        return {"approx": [x.real, x.imag], "eps": Scalar.DEFAULT_EPS}
    return rat_str(as_rat(x))


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, dict):
        if "approx" in obj:
            re, im = obj["approx"]
            return Scalar.approx(complex(re, im), obj.get("eps", Scalar.DEFAULT_EPS))
        return Scalar(GaussianRational(Q(str(obj["re"])), Q(str(obj.get("im", "0")))))
    if isinstance(obj, (int,)):
        return Scalar(GaussianRational(Q(obj), ZERO))
    if isinstance(obj, float):
        return Scalar.approx(complex(obj, 0.0))
    return Scalar(parse_gaussian(str(obj)))
