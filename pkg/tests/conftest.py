import itertools
import random

import pytest

from idealcore import FieldSpec, Ideal, PolyRing

GOR = "x^2-y^2+x*z, x*y+x*z-y*z, x*z-2*y*z+z^2, y^2+y*z-z^2, z^2-2*y*z"
EX52 = "x^7, x^6*y, x^2*y^5, y^7"
EX_MATRIX = ("0, -x^2, -y^2, -z^2, -w^2; x^2, 0, -w^2, y^2, -z^2; y^2, w^2, 0, -x^2, -x^2;"
             " z^2, -y^2, x^2, 0, -y^2; w^2, z^2, x^2, y^2, 0")


@pytest.fixture
def R2():
    return PolyRing("x,y")


@pytest.fixture
def R3():
    return PolyRing("x,y,z")


@pytest.fixture
def R4():
    return PolyRing("x,y,z,w")


@pytest.fixture
def Q2():
    return PolyRing("x,y", FieldSpec.rationals())


def random_form(ring, degree, rng, lo=1, hi=32002, density=1.0):
    f = ring.zero
    for e in ring.monomials_of_degree(degree):
        if rng.random() <= density:
            f = f + ring.monomial(e) * rng.randint(lo, hi)
    return f


def random_monomial_ideal(ring, rng, k_max=4, deg_max=4):
    k = rng.randint(1, k_max)
    exps = set()
    while len(exps) < k:
        exps.add(tuple(rng.randint(0, deg_max) for _ in range(ring.nvars)))
    exps.discard((0,) * ring.nvars)
    if not exps:
        exps.add((1,) + (0,) * (ring.nvars - 1))
    return sorted(exps)


def monomial_ideal(ring, exps):
    return Ideal(ring, [ring.monomial(e) for e in exps])


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def in_monomial_ideal(m, gens):
    return any(divides(g, m) for g in gens)


def monomials_up_to(n, D):
    for e in itertools.product(range(D + 1), repeat=n):
        if sum(e) <= D:
            yield e


@pytest.fixture
def rng():
    return random.Random(20240601)
