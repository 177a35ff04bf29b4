import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kmx.affine import affinize
from kmx.finite_lie import build_algebra


@pytest.fixture(scope="session")
def algebras():
    names = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "D4"]
    return {name: build_algebra(name) for name in names}


@pytest.fixture(scope="session")
def affine_a1(algebras):
    return affinize(algebras["A1"])


@pytest.fixture(scope="session")
def affine_a2(algebras):
    return affinize(algebras["A2"])
