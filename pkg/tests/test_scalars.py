import json

import pytest
from hypothesis import given, strategies as st

from kmx._ground import GROUND, Q
from kmx.scalars import (
    GaussianRational,
    Scalar,
    downgrade_count,
    parse_gaussian,
    reset_downgrade_count,
    scalar_from_json,
    scalar_to_json,
)

rationals = st.builds(lambda n, d: Q(n, d), st.integers(-50, 50), st.integers(1, 30))
gaussians = st.builds(GaussianRational, rationals, rationals)


def test_ground_selected():
    assert GROUND in ("gmpy2", "fractions")


def test_rational_normalization():
    x = Q(6, -4)
    assert x.denominator > 0
    assert x.numerator == -3 and x.denominator == 2


def test_basic_arithmetic():
    assert Q(1, 2) + Q(1, 3) == Q(5, 6)
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1, 0)
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0, 0).inv()


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c


@given(gaussians, gaussians)
def test_conj_ring_automorphism(a, b):
    assert a.conj().conj() == a
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()


@given(gaussians)
def test_inverse(a):
    if not a.is_zero():
        assert a * a.inv() == GaussianRational(1, 0)
        assert a.abs2() == (a * a.conj()).re
        assert a.abs2() >= 0


def test_parse_gaussian():
    cases = {
        "3/4": GaussianRational(Q(3, 4), 0),
        "-i": GaussianRational(0, -1),
        "2i": GaussianRational(0, 2),
        "1/2+1/3i": GaussianRational(Q(1, 2), Q(1, 3)),
        "1-2i": GaussianRational(1, -2),
    }
    for text, want in cases.items():
        assert parse_gaussian(text) == want


def test_str_roundtrip():
    vals = [GaussianRational(Q(3, 4), Q(-1, 2)), GaussianRational(0, 1),
            GaussianRational(-2, 0), GaussianRational(Q(1, 3), 1)]
    for v in vals:
        assert parse_gaussian(str(v)) == v


def test_scalar_union_and_downgrade():
    reset_downgrade_count()
    a = Scalar("1/2")
    b = Scalar.approx(0.5 + 0j)
    assert a.exact and not b.exact
    c = a + b
    assert not c.exact
    assert downgrade_count() == 1
    d = a * Scalar("1/3")
    assert d.exact and d.val == GaussianRational(Q(1, 6), 0)
    assert downgrade_count() == 1


def test_scalar_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar("0").inv()
    with pytest.raises(ZeroDivisionError):
        Scalar.approx(1e-12 + 0j).inv()


def test_unit_modulus():
    assert Scalar("i").is_unit_modulus()
    assert Scalar("-1").is_unit_modulus()
    assert not Scalar("2").is_unit_modulus()
    assert Scalar.approx(complex(3 ** -0.5, (2 / 3) ** 0.5), 1e-9).is_unit_modulus()


def test_scalar_json_roundtrip():
    vals = [Scalar("5/6"), Scalar("1/2-2/3i"), Scalar("-3"), Scalar.approx(1.5 + 0.25j, 1e-8)]
    for v in vals:
        enc = scalar_to_json(v)
        json.dumps(enc)  # representable
        back = scalar_from_json(enc)
        assert back == v
        assert back.exact == v.exact


def test_exact_real_encodes_as_fraction_string():
    assert scalar_to_json(Scalar("5/6")) == "5/6"
    assert scalar_to_json(Scalar("1+2i")) == {"re": "1", "im": "2"}
