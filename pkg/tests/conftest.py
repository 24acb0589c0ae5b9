"""Shared quivers, parameter builders, and small standard modules."""

from fractions import Fraction

import pytest

from wreathq.cyclotomic import Scalar
from wreathq.linalg import Mat
from wreathq.modules import Params, WreathModule, point_module
from wreathq.quiver import Quiver, Weight


@pytest.fixture(scope="session")
def ahat1():
    return Quiver(["0", "1"], [("a", "0", "1"), ("b", "0", "1")])


@pytest.fixture(scope="session")
def ahat2():
    return Quiver(["0", "1", "2"], [("a0", "0", "1"), ("a1", "1", "2"), ("a2", "2", "0")])


def make_params(quiver, n, lam, nu=0, order=1):
    weight = Weight({v: Scalar.rational(x, order) if not isinstance(x, Scalar) else x
                     for v, x in lam.items()}, order)
    nu_s = nu if isinstance(nu, Scalar) else Scalar.rational(nu, order)
    return Params(quiver, n, weight, nu_s)


def simple_at(quiver, vertex, lam, nu=0):
    """One-dimensional n = 1 module concentrated at a vertex, zero actions."""
    return point_module(make_params(quiver, 1, lam, nu), vertex)


def mat(rows, order=1):
    return Mat.from_rows(rows, order)


def frac(a, b=1):
    return Fraction(a, b)
