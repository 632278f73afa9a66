import random

import numpy as np
import pytest

from idealcore import (Ideal, PolyRing, SamplerConfig, analytic_spread, is_reduction,
                       maximal_ideal, reduction_number, sample_minimal_reduction)
from idealcore.linalg import rref
from idealcore.reductions import (GenericityFailure, NotASubideal, ReductionCapError,
                                  minimal_generator_count, random_combinations, stream_rng)

from conftest import EX52, GOR


def jacobian_rank(gens, rng):
    """Rank of the Jacobian of the generators at a random point mod p.

    For forms of one degree this is the transcendence degree of k[f_1..f_m],
    i.e. the dimension of the fiber ring, with high probability.
    """
    ring = gens[0].ring
    p = ring.p
    pt = [rng.randrange(1, p) for _ in range(ring.nvars)]
    J = np.array([[int(f.diff(v).evaluate(pt)) % p for v in range(ring.nvars)] for f in gens],
                 dtype=np.int64)
    return len(rref(J, p)[1])


def test_reduction_of_itself(R2):
    I = maximal_ideal(R2) ** 2
    rep = is_reduction(I, I)
    assert rep.is_reduction and rep.r == 0 and not rep.cap_hit
    assert reduction_number(I, I) == 0


def test_reduction_of_square_of_maximal_ideal(R2):
    assert reduction_number(Ideal(R2, "x^2, y^2"), maximal_ideal(R2) ** 2) == 1


@pytest.mark.parametrize("j", [2, 3, 4])
def test_monomial_reduction_of_maximal_powers(R2, j):
    assert reduction_number(Ideal(R2, f"x^{j}, y^{j}"), maximal_ideal(R2) ** j) == 1


def test_monomial_brute_force_for_r1(R2):
    # exponent sums of (x^2,y^2) * (x,y)^2 cover every degree-4 monomial, but not with r = 0
    quad = [(a, 2 - a) for a in range(3)]
    products = {(g[0] + q[0], g[1] + q[1]) for g in [(2, 0), (0, 2)] for q in quad}
    assert products == {(a, 4 - a) for a in range(5)}
    assert set(quad) != {(2, 0), (0, 2)}
    rep = is_reduction(Ideal(R2, "x^2, y^2"), maximal_ideal(R2) ** 2)
    assert rep.r == 1


def test_example_five_two(R2):
    I = Ideal(R2, EX52)
    assert reduction_number(Ideal(R2, "x^7, y^7"), I) == 4
    assert reduction_number(Ideal(R2, "x^7, x^6*y + y^7"), I) == 3


def test_cap_hit_is_unknown(R2):
    I = Ideal(R2, EX52)
    rep = is_reduction(Ideal(R2, "x^7, y^7"), I, r_max=2)
    assert not rep.is_reduction and rep.cap_hit and rep.verdict == "unknown"
    with pytest.raises(ReductionCapError):
        reduction_number(Ideal(R2, "x^7, y^7"), I, r_max=2)


def test_non_reduction_hits_cap(R2):
    rep = is_reduction(Ideal(R2, "x^2"), maximal_ideal(R2) ** 2, r_max=4)
    assert rep.cap_hit and rep.r is None


def test_errors(R2, R3):
    with pytest.raises(NotASubideal):
        is_reduction(Ideal(R2, "x"), Ideal(R2, "x^2"))
    with pytest.raises(ValueError):
        is_reduction(Ideal(R2, "x"), Ideal(R2, "x"), r_max=-1)
    with pytest.raises(ValueError):
        is_reduction(Ideal(R2, "x"), Ideal(R3, "x"))
    for bad in ("0", "1", "x^2 + y"):
        with pytest.raises(ValueError):
            analytic_spread(Ideal(R2, bad) if bad != "0" else Ideal(R2, []))


def test_enlarging_a_reduction(R2):
    I = Ideal(R2, EX52)
    J = Ideal(R2, "x^7, y^7")
    r = reduction_number(J, I)
    for g in I.gens:
        r2 = reduction_number(J + Ideal(R2, [g]), I)
        assert r2 <= r


def test_linear_change_of_generators(R2):
    I = Ideal(R2, EX52)
    J = Ideal(R2, "x^7 + 3*y^7, 2*x^7 - y^7")
    assert reduction_number(J, I) == reduction_number(Ideal(R2, "x^7, y^7"), I)


def test_analytic_spread_examples(R2, R3):
    assert analytic_spread(maximal_ideal(R2)) == 2
    assert analytic_spread(Ideal(R2, EX52)) == 2
    assert analytic_spread(Ideal(R3, GOR)) == 3
    assert analytic_spread(Ideal(R3, "x*y, x*z, y*z")) == 3
    assert analytic_spread(Ideal(R3, "x^2, x*y")) == 2
    assert analytic_spread(Ideal(R3, "x^2")) == 1


def test_analytic_spread_of_non_basic_curve():
    # the twisted cubic's 2x2 minors: three quadrics, height two, spread three
    R = PolyRing("a,b,c,d")
    I = Ideal(R, "a*c - b^2, a*d - b*c, b*d - c^2")
    assert I.height() == 2
    assert analytic_spread(I) == 3


@pytest.mark.parametrize("seed", range(8))
def test_analytic_spread_vs_jacobian_rank(seed):
    rng = random.Random(seed)
    R = PolyRing("x,y,z,w")
    d = rng.randint(1, 2)
    k = rng.randint(1, 4)
    variables = rng.sample(range(4), rng.randint(2, 4))
    gens = []
    for _ in range(k):
        f = R.zero
        for e in R.monomials_of_degree(d):
            if all(e[v] == 0 for v in range(4) if v not in variables) and rng.random() < 0.5:
                f = f + R.monomial(e) * rng.randint(1, 100)
        if f:
            gens.append(f)
    if not gens:
        return
    I = Ideal(R, gens)
    ell = analytic_spread(I)
    assert ell == jacobian_rank(I.minimal_generators().gens, rng)
    assert I.height() <= ell <= R.nvars


def test_analytic_spread_monomial_vs_jacobian(R3):
    rng = random.Random(5)
    for gens in ("x^2, y^2, x*y", "x*y, y*z", "x^3, x^2*y, x*y^2", "x^2*y, x*y*z, y^2*z, z^3"):
        I = Ideal(R3, gens)
        assert analytic_spread(I) == jacobian_rank(I.minimal_generators().gens, rng)


def test_spread_equals_height_when_m_primary(R3):
    for I in (maximal_ideal(R3) ** 2, Ideal(R3, GOR), Ideal(R3, "x^2, y^3, z^2, x*y*z")):
        assert analytic_spread(I) == I.height() == 3


def test_sample_square_of_maximal_ideal(R2):
    I = maximal_ideal(R2) ** 2
    J, rep = sample_minimal_reduction(I, 2, SamplerConfig(seed=7))
    assert len(J.gens) == 2 and rep.r == 1 and rep.seed == 7
    assert is_reduction(J, I).is_reduction


def test_sampling_is_deterministic(R3):
    I = Ideal(R3, GOR)
    a, ra = sample_minimal_reduction(I, 3, SamplerConfig(seed=11), index=4)
    b, rb = sample_minimal_reduction(I, 3, SamplerConfig(seed=11), index=4)
    c, _ = sample_minimal_reduction(I, 3, SamplerConfig(seed=12), index=4)
    assert a.gens == b.gens and ra == rb
    assert a.gens != c.gens


def test_substreams_are_independent_of_order():
    assert stream_rng(3, "a").random() == stream_rng(3, "a").random()
    assert stream_rng(3, "a").random() != stream_rng(3, "b").random()


def test_sample_gorenstein(R3):
    I = Ideal(R3, GOR)
    J, rep = sample_minimal_reduction(I, 3, SamplerConfig(seed=0))
    assert len(J.gens) == 3 and rep.r == 2


def test_basic_ideal_is_its_own_reduction(R3):
    I = Ideal(R3, "x^2, y^2")
    J, rep = sample_minimal_reduction(I, 2)
    assert J.gens == I.minimal_generators().gens and rep.r == 0 and rep.stream is None


def test_genericity_failure_lists_seeds(R2):
    # one generator cannot be a reduction of m^2, so every attempt fails
    cfg = SamplerConfig(seed=5, max_retries=3)
    with pytest.raises(GenericityFailure) as err:
        sample_minimal_reduction(maximal_ideal(R2) ** 2, 1, cfg)
    assert err.value.seeds_tried == ("5/0/0", "5/0/1", "5/0/2")


def test_sampler_rejects_bad_input(R2):
    with pytest.raises(ValueError):
        sample_minimal_reduction(Ideal(R2, "x^2, y^3"), 2)
    with pytest.raises(ValueError):
        sample_minimal_reduction(Ideal(R2, "x^2 + y"), 1)
    with pytest.raises(ValueError):
        sample_minimal_reduction(maximal_ideal(R2), 0)
    with pytest.raises(ValueError):
        SamplerConfig(max_retries=0)
    with pytest.raises(ValueError):
        SamplerConfig(seed=-1)


def test_excluded_coefficients(R2):
    rng = random.Random(0)
    excluded = frozenset(range(2, 32003))
    J = random_combinations(Ideal(R2, "x, y"), 3, rng, excluded)
    assert all(g == R2.parse("x + y") for g in J.gens)


def test_first_try_success_rate():
    R2, R3 = PolyRing("x,y"), PolyRing("x,y,z")
    cases = [(maximal_ideal(R2) ** 2, 2), (maximal_ideal(R2) ** 3, 2), (Ideal(R3, GOR), 3),
             (Ideal(R2, EX52), 2)]
    first, total = 0, 0
    for I, ell in cases:
        for i in range(25):
            _, rep = sample_minimal_reduction(I, ell, SamplerConfig(seed=1), index=i)
            total += 1
            first += rep.stream.endswith("/0")
    assert first / total > 0.99


def test_minimal_generator_count(R2):
    assert minimal_generator_count(Ideal(R2, "x^2, x*y, y^2, x^2 + y^2")) == 3
