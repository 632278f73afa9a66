import pytest

from idealcore import (Ideal, PolyMatrix, SamplerConfig, balancedness_check, core_ci_power,
                       core_conjecture, core_formula, core_montecarlo, gamma_upper_estimate,
                       integral_closure_member, maximal_ideal, pfaffian_ideal)
from idealcore.core import (CoreDisagreement, Method, NotARegularSequence, gamma_bound, gamma_trials,
                            is_regular_sequence)
from idealcore.reductions import sample_minimal_reduction

from conftest import EX52, EX_MATRIX, GOR


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_formula_on_maximal_powers(R2, j):
    m = maximal_ideal(R2)
    res = core_formula(m ** j, Ideal(R2, f"x^{j}, y^{j}"))
    assert res.core == m ** (2 * j - 1)
    assert res.consistent and res.method is Method.FORMULA
    assert res.witnesses["colon"] == m ** (j - 1)


def test_formula_on_basic_ideal(R3):
    I = Ideal(R3, "x^2, y*z")
    assert core_formula(I, I).core == I


def test_formula_rejects_non_reduction(R2):
    with pytest.raises(ValueError):
        core_formula(maximal_ideal(R2) ** 2, Ideal(R2, "x^2, x*y"), r_max=3)


def test_formula_disagreement_is_loud(R3):
    # three of the five quadrics: reduction number 2, so the colon formula need not hold
    I = Ideal(R3, GOR)
    J = Ideal(R3, GOR.split(", ")[:3])
    with pytest.warns(CoreDisagreement):
        res = core_formula(I, J)
    assert not res.consistent


def test_conjecture_example_five_two(R2):
    I = Ideal(R2, EX52)
    m13 = maximal_ideal(R2) ** 13
    res = core_conjecture(I, Ideal(R2, "x^7, y^7"))
    assert res.witnesses["r"] == 4 and res.consistent
    assert all(e == m13 for e in res.witnesses["expressions"].values())
    resH = core_conjecture(I, Ideal(R2, "x^7, x^6*y + y^7"))
    assert resH.witnesses["r"] == 3 and resH.core == m13


def test_conjecture_with_r_zero(R2):
    I = Ideal(R2, "x^2, y^3")
    res = core_conjecture(I, I)
    assert res.witnesses["r"] == 0 and res.consistent and res.core == I


def test_conjecture_on_gorenstein(R3):
    res = core_conjecture(Ideal(R3, GOR), Ideal(R3, GOR.split(", ")[:3]))
    assert res.consistent and res.core == maximal_ideal(R3) ** 4


def test_montecarlo_principal(R2):
    I = Ideal(R2, "x^2 + y^2")
    res = core_montecarlo(I)
    assert res.core == I and res.witnesses["samples"] == 1


def test_montecarlo_example_five_two(R2):
    res = core_montecarlo(Ideal(R2, EX52), SamplerConfig(seed=0))
    assert res.core == maximal_ideal(R2) ** 13


def test_montecarlo_gorenstein(R3):
    res = core_montecarlo(Ideal(R3, GOR), SamplerConfig(seed=0), 5, min_samples=10)
    assert res.core == maximal_ideal(R3) ** 4
    assert res.witnesses["samples"] >= 10


def test_montecarlo_chain_is_monotone(R2):
    I = maximal_ideal(R2) ** 3
    res = core_montecarlo(I, SamplerConfig(seed=4))
    formula = core_formula(I, Ideal(R2, "x^3, y^3")).core
    chain = res.witnesses["chain"]
    for a, b in zip(chain, chain[1:]):
        assert b.issubset(a) and not a.issubset(b)
    assert all(formula.issubset(K) for K in chain)
    assert res.core == formula


def test_montecarlo_is_reproducible(R2):
    I = maximal_ideal(R2) ** 2
    a = core_montecarlo(I, SamplerConfig(seed=9))
    b = core_montecarlo(I, SamplerConfig(seed=9))
    assert a.witnesses["streams"] == b.witnesses["streams"]
    assert a.witnesses["gamma_upper"] == b.witnesses["gamma_upper"]


def test_montecarlo_errors(R2):
    with pytest.raises(ValueError):
        core_montecarlo(maximal_ideal(R2), stabilization=0)


def test_pfaffian_example_formula(R4):
    M = PolyMatrix.parse(EX_MATRIX, R4)
    I = pfaffian_ideal(M, 4)
    J, rep = sample_minimal_reduction(I, 4, SamplerConfig(seed=0))
    assert rep.r == 2
    res = core_formula(I, J)
    assert res.consistent
    assert res.core == Ideal(R4, "x^2, y^2, z^2, w^2") * I


def test_oracle_examples(R2, R3):
    assert core_ci_power([R2.gen(0), R2.gen(1)], 2, 3).core == maximal_ideal(R2) ** 5
    assert core_ci_power(list(R3.gens), 3, 2).core == maximal_ideal(R3) ** 4
    f = R2.parse("x^2 + y^2")
    assert core_ci_power([f], 1, 3).core == Ideal(R2, [f ** 3])


def test_oracle_rejects_bad_sequences(R2, R3):
    with pytest.raises(NotARegularSequence):
        core_ci_power([R3.parse("x*y"), R3.parse("x*z")], 2, 2)
    with pytest.raises(NotARegularSequence):
        core_ci_power([R2.parse("x + 1"), R2.parse("y")], 2, 1)
    with pytest.raises(ValueError):
        core_ci_power([R2.gen(0)], 2, 1)
    with pytest.raises(ValueError):
        core_ci_power([R2.gen(0), R2.gen(1)], 2, 0)


def test_regular_sequence(R3):
    assert is_regular_sequence([R3.parse("x^2 + y*z"), R3.parse("y^2 - x*z")])
    assert not is_regular_sequence([R3.parse("x"), R3.parse("x*y")])
    assert not is_regular_sequence([R3.parse("1")])


@pytest.mark.parametrize("j", [2, 3])
def test_maximal_powers_are_balanced(R2, j):
    I = maximal_ideal(R2) ** j
    rep = balancedness_check(I, 4, SamplerConfig(seed=1))
    assert rep.balanced and rep.colons[0] == maximal_ideal(R2) ** (j - 1)
    # every sampled reduction contains (J:I)I
    K = rep.colons[0] * I
    assert all(K.issubset(J) for J in rep.reductions)
    # the coefficient-ideal identity (J:I)J = (J:I)I
    assert all(rep.colons[0] * J == K for J in rep.reductions)


def test_gorenstein_is_not_balanced(R3):
    rep = balancedness_check(Ideal(R3, GOR), 3, SamplerConfig(seed=0))
    assert not rep.balanced and len(rep.colons) > 1


def test_basic_ideal_is_balanced(R2):
    rep = balancedness_check(Ideal(R2, "x^2, y^2"), 5)
    assert rep.balanced and len(rep.reductions) == 1


def test_gamma_of_square(R2):
    I = maximal_ideal(R2) ** 2
    counts = gamma_trials(I, 20, SamplerConfig(seed=0), maximal_ideal(R2) ** 3)
    assert min(counts) == 3
    assert gamma_upper_estimate(I, 20, SamplerConfig(seed=0), maximal_ideal(R2) ** 3) == 3


def test_gamma_principal(R2):
    I = Ideal(R2, "x*y")
    assert gamma_upper_estimate(I, 3, core=I) == 1


def test_gamma_needs_core(R2):
    with pytest.raises(ValueError, match="core unknown"):
        gamma_upper_estimate(maximal_ideal(R2), 2)


def test_gamma_example_five_two(R2):
    # recorded observation, not a theorem: the a-priori bound only covers balanced ideals
    est = gamma_upper_estimate(Ideal(R2, EX52), 3, SamplerConfig(seed=0), maximal_ideal(R2) ** 13)
    assert est == 13
    assert gamma_bound(2, 4, 2) == 5


def test_integral_closure_members(R2):
    assert integral_closure_member(R2.parse("x*y"), Ideal(R2, "x^2, y^2")).verdict == "member"
    v = integral_closure_member(R2.parse("y"), Ideal(R2, "x"), k_max=6)
    assert v.verdict == "non_member_up_to_cap" and v.r is None
    # principal ideals of a UFD are integrally closed
    assert not integral_closure_member(R2.parse("x"), Ideal(R2, "x^2"), k_max=6)
    assert integral_closure_member(R2.parse("x^2"), Ideal(R2, "x^2")).r == 0


def test_integral_closure_ring_mismatch(R2, R3):
    with pytest.raises(ValueError):
        integral_closure_member(R3.parse("x"), Ideal(R2, "x"))


def test_pfaffian_core_is_not_integrally_closed(R4):
    I = pfaffian_ideal(PolyMatrix.parse(EX_MATRIX, R4), 4)
    core = Ideal(R4, "x^2, y^2, z^2, w^2") * I
    f = R4.parse("x*w*(x^4 + y^4 + z^2*w^2)")
    assert f not in core
    assert integral_closure_member(f, core, 10).verdict == "member"


@pytest.mark.parametrize("j", [2, 3])
def test_integral_elements_of_normal_ideals(R2, j):
    # m^j is normal, so elements integral over (J:I)I^k lie in it
    m = maximal_ideal(R2)
    I = m ** j
    K = Ideal(R2, f"x^{j}, y^{j}").colon(I)
    candidates = [R2.parse(s) for s in ("x^5", "x^3*y^2 + y^5", "x^4*y^3", "x*y", "x^2*y", "x^7 - y^7")]
    for k in (0, 1):
        target = K * I ** k if k else K
        for f in candidates:
            if integral_closure_member(f, target, 6).member:
                assert f in target
