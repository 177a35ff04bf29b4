import random

import pytest

from kmx._ground import Q
from kmx.cartan import CartanClass, catalog_matrix, classify, principal_minors, symmetrize, validate_gcm
from kmx.errors import RejectionError

FINITE_CATALOG = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"]


def test_validate_accepts_1x1():
    g = validate_gcm([[2]])
    assert g.cls == CartanClass.FINITE


def test_validate_rejects_zero_pattern():
    with pytest.raises(RejectionError) as err:
        validate_gcm([[2, -1], [0, 2]])
    assert err.value.rule == "gcm-axiom-c"
    assert err.value.where == (0, 1)


def test_validate_rejects_bad_diagonal_and_positive_offdiag():
    with pytest.raises(RejectionError) as err:
        validate_gcm([[1]])
    assert err.value.rule == "gcm-axiom-a"
    with pytest.raises(RejectionError) as err:
        validate_gcm([[2, 1], [1, 2]])
    assert err.value.rule == "gcm-axiom-b"


def test_validate_rejects_non_square():
    with pytest.raises(RejectionError) as err:
        validate_gcm([[2, -1]])
    assert err.value.rule == "gcm-not-square"


def test_affine_matrix_accepted():
    g = validate_gcm([[2, -2], [-2, 2]])
    assert g.cls == CartanClass.AFFINE


def test_classification_examples():
    assert classify([[2, -1], [-1, 2]]) == CartanClass.FINITE
    assert classify([[2, -2], [-2, 2]]) == CartanClass.AFFINE
    assert classify([[2, -3], [-3, 2]]) == CartanClass.INDEFINITE


def test_classification_catalog(algebras):
    for name in FINITE_CATALOG:
        assert classify(catalog_matrix(name)) == CartanClass.FINITE


def test_principal_minors_examples():
    assert principal_minors([[2]]) == [Q(2)]
    assert principal_minors([[2, -1], [-1, 2]]) == [Q(2), Q(3)]
    assert principal_minors([[2, -2], [-2, 2]]) == [Q(2), Q(0)]


def test_classify_invariant_under_relabeling():
    rng = random.Random(11)
    for name in ("A3", "B3", "G2", "D4"):
        m = catalog_matrix(name)
        n = len(m)
        for _ in range(10):
            perm = list(range(n))
            rng.shuffle(perm)
            pm = [[m[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
            assert classify(pm) == classify(m)


def test_symmetrizer_examples():
    assert symmetrize(validate_gcm([[2, -1], [-1, 2]])) == (Q(1), Q(1))
    assert symmetrize(validate_gcm([[2, -1], [-3, 2]])) == (Q(3), Q(1))
    assert symmetrize(validate_gcm([[2, -2], [-1, 2]])) == (Q(1), Q(2))


def test_symmetrizer_property():
    for name in FINITE_CATALOG:
        rows = catalog_matrix(name)
        d = symmetrize(validate_gcm(rows))
        n = len(rows)
        assert min(d) == 1
        for i in range(n):
            for j in range(n):
                assert d[i] * rows[i][j] == d[j] * rows[j][i]


def test_catalog_unknown_name():
    with pytest.raises(RejectionError):
        catalog_matrix("E8")
