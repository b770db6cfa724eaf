import pytest

from hochgap import GF, QQ, ZZ, AlgebraPresentation
from hochgap.cli import load_algebra

CORPUS = ["zsqrt2", "qx_poly", "qxy_poly", "dual_numbers_q", "dual_numbers_f5",
          "etale", "quadratic", "campillo"]
ALGEBRAS = [n for n in CORPUS if n != "campillo"]
FINITE_FIELD_CASES = ["dual_numbers_q", "dual_numbers_f5", "etale", "quadratic"]


def make(coeffs, names, relations=(), degrees=None):
    return AlgebraPresentation.make(coeffs, names, list(relations), degrees)


@pytest.fixture(scope="session")
def corpus():
    return {name: load_algebra(name) for name in CORPUS}


@pytest.fixture
def zsqrt2():
    return make(ZZ, ["t"], ["t^2 - 2"])


@pytest.fixture
def campillo_ring():
    return make(QQ, ["x", "y"], ["x^2", "x*y"])


@pytest.fixture
def dual_f5():
    return make(GF(5), ["x"], ["x^2"])
