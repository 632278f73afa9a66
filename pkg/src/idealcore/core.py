"""core(I) by several routes, balancedness, gamma estimates, integral closure membership."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Sequence

from .ideal import Ideal
from .reductions import (DEFAULT_R_MAX, SamplerConfig, analytic_spread, is_reduction,
                         minimal_generator_count, reduction_number, sample_minimal_reduction)
from .ring import Polynomial

DEFAULT_K_MAX = 10
DEFAULT_STABILIZATION = 5


class Method(str, Enum):
    FORMULA = "formula"
    MONTECARLO = "montecarlo"
    CONJECTURE = "conjecture"
    ORACLE = "oracle"


class CoreDisagreement(UserWarning):
    """Two core expressions that should coincide came out different."""


class NotARegularSequence(ValueError):
    pass


@dataclass
class CoreResult:
    core: Ideal
    method: Method
    status: str
    witnesses: dict = field(default_factory=dict)
    agreement: dict[str, bool] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(self.agreement.values())


def _require_reduction(J: Ideal, I: Ideal, r_max: int) -> int:
    rep = is_reduction(J, I, r_max)
    if not rep.is_reduction:
        raise ValueError(f"J is not a reduction of I (no witness up to r = {r_max})")
    return rep.r


def _report(agreement: dict[str, bool], what: str):
    bad = [k for k, v in agreement.items() if not v]
    if bad:
        warnings.warn(f"{what}: disagreement in {', '.join(bad)}", CoreDisagreement, stacklevel=3)


def core_formula(I: Ideal, J: Ideal, r_max: int = DEFAULT_R_MAX) -> CoreResult:
    """core(I) = (J:I) I for a minimal reduction J, cross-checked against (J:I) J."""
    r = _require_reduction(J, I, r_max)
    K = J.colon(I)
    via_I = K * I
    via_J = K * J
    agreement = {"(J:I)I = (J:I)J": via_I == via_J}
    _report(agreement, "core formula")
    return CoreResult(via_I, Method.FORMULA, "formula",
                      {"reduction": J, "r": r, "colon": K, "(J:I)J": via_J}, agreement)


def core_conjecture(I: Ideal, J: Ideal, r_max: int = DEFAULT_R_MAX) -> CoreResult:
    """The three expressions (J^r:I^r)I, (J^r:I^r)J and J^(r+1):I^r, r = r_J(I)."""
    r = reduction_number(J, I, r_max)
    Jr, Ir = J ** r, I ** r
    K = Jr.colon(Ir)
    exprs = {
        "(J^r:I^r)I": K * I,
        "(J^r:I^r)J": K * J,
        "J^(r+1):I^r": (Jr * J).colon(Ir),
    }
    names = list(exprs)
    agreement = {f"{a} = {b}": exprs[a] == exprs[b]
                 for i, a in enumerate(names) for b in names[i + 1:]}
    _report(agreement, "three-way core expressions")
    return CoreResult(exprs[names[0]], Method.CONJECTURE, "three-way",
                      {"reduction": J, "r": r, "expressions": exprs}, agreement)


def is_regular_sequence(gens: Sequence[Polynomial]) -> bool:
    """Koszul-style test: ((f_1..f_{i-1}) : f_i) = (f_1..f_{i-1}) for every i, ideal proper."""
    if not gens:
        return True
    ring = gens[0].ring
    if any(not f for f in gens):
        return False
    if Ideal(ring, gens).is_unit():
        return False
    for i in range(1, len(gens)):
        prev = Ideal(ring, gens[:i])
        if gens[i] in prev:
            return False
        if not prev.colon(gens[i]).issubset(prev):
            return False
    return True


def core_ci_power(gens: Sequence[Polynomial], g: int, j: int) -> CoreResult:
    """core(I^j) = I^(gj-g+1) for a complete intersection I of height g."""
    gens = list(gens)
    if len(gens) != g:
        raise ValueError(f"expected {g} generators, got {len(gens)}")
    if j < 1:
        raise ValueError("j must be at least 1")
    if not all(f.is_homogeneous() for f in gens):
        raise NotARegularSequence("generators must be homogeneous")
    if not is_regular_sequence(gens):
        raise NotARegularSequence("generators do not form a regular sequence")
    I = Ideal(gens[0].ring, gens)
    return CoreResult(I ** (g * j - g + 1), Method.ORACLE, "oracle", {"g": g, "j": j})


def core_montecarlo(I: Ideal, cfg: SamplerConfig | None = None,
                    stabilization: int = DEFAULT_STABILIZATION, *, min_samples: int = 1,
                    max_samples: int = 200, ell: int | None = None,
                    r_max: int = DEFAULT_R_MAX, stream: str = "mc") -> CoreResult:
    """Running intersection of random minimal reductions until it stops shrinking.

    Every iterate contains core(I).  ``gamma_upper`` in the witnesses is the
    number of samples after which the chain last shrank.
    """
    cfg = cfg or SamplerConfig()
    if stabilization < 1:
        raise ValueError("stabilization must be at least 1")
    ell = analytic_spread(I) if ell is None else ell
    if minimal_generator_count(I) <= ell:
        mins = I.minimal_generators()
        return CoreResult(mins, Method.MONTECARLO, "basic ideal: unique minimal reduction",
                          {"samples": 1, "gamma_upper": 1, "ell": ell, "seed": cfg.seed,
                           "chain": [mins], "r": [0]})
    K = None
    chain: list[Ideal] = []
    rs, streams = [], []
    quiet = 0
    last_shrink = 0
    n = 0
    while True:
        J, rep = sample_minimal_reduction(I, ell, cfg, r_max, index=f"{stream}/{n}")
        n += 1
        rs.append(rep.r)
        streams.append(rep.stream)
        if K is None:
            K, last_shrink = J, n
            chain.append(K)
        elif K.issubset(J):
            quiet += 1
        else:
            K = K & J
            last_shrink, quiet = n, 0
            chain.append(K)
        if n >= min_samples and quiet >= stabilization:
            break
        if n >= max_samples:
            raise RuntimeError(f"running intersection still shrinking after {n} samples")
    K = K.minimal_generators()
    return CoreResult(K, Method.MONTECARLO, f"stabilized after {stabilization} non-shrinking samples",
                      {"samples": n, "gamma_upper": last_shrink, "ell": ell, "seed": cfg.seed,
                       "streams": streams, "r": rs, "chain": chain})


@dataclass(frozen=True)
class BalanceReport:
    balanced: bool
    colons: tuple[Ideal, ...]
    reductions: tuple[Ideal, ...]

    def __bool__(self):
        return self.balanced


def balancedness_check(I: Ideal, samples: int, cfg: SamplerConfig | None = None, *,
                       ell: int | None = None, r_max: int = DEFAULT_R_MAX,
                       stream: str = "bal") -> BalanceReport:
    """Do the colons J:I agree across ``samples`` random minimal reductions J?"""
    cfg = cfg or SamplerConfig()
    if samples < 1:
        raise ValueError("samples must be at least 1")
    ell = analytic_spread(I) if ell is None else ell
    distinct: list[Ideal] = []
    reductions = []
    for i in range(samples):
        J, _ = sample_minimal_reduction(I, ell, cfg, r_max, index=f"{stream}/{i}")
        reductions.append(J)
        K = J.colon(I)
        if not any(K == D for D in distinct):
            distinct.append(K)
        if minimal_generator_count(I) <= ell:
            break
    return BalanceReport(len(distinct) == 1, tuple(distinct), tuple(reductions))


def gamma_trials(I: Ideal, trials: int, cfg: SamplerConfig | None, core: Ideal | None, *,
                 ell: int | None = None, r_max: int = DEFAULT_R_MAX,
                 max_samples: int = 100) -> list[int]:
    """Per trial, how many random reductions it took for their intersection to reach core."""
    if core is None:
        raise ValueError("core unknown: pass a corroborated core ideal")
    cfg = cfg or SamplerConfig()
    ell = analytic_spread(I) if ell is None else ell
    if minimal_generator_count(I) <= ell:
        return [1] * trials
    counts = []
    for t in range(trials):
        K = None
        for n in range(1, max_samples + 1):
            J, _ = sample_minimal_reduction(I, ell, cfg, r_max, index=f"gamma/{t}/{n}")
            K = J if K is None else K & J
            # core is inside every intersection, so containment is equality
            if K.issubset(core):
                counts.append(n)
                break
        else:
            raise RuntimeError(f"trial {t} did not reach core in {max_samples} samples")
    return counts


def gamma_upper_estimate(I: Ideal, trials: int, cfg: SamplerConfig | None = None,
                         core: Ideal | None = None, **kw) -> int:
    """Smallest observed number of reductions cutting out core: an upper bound for gamma."""
    return min(gamma_trials(I, trials, cfg, core, **kw))


def gamma_bound(ell: int, n: int, g: int) -> int:
    """ell * C(n-g, ell-g+1) + 1, the a-priori bound for balanced ideals."""
    return ell * comb(n - g, ell - g + 1) + 1


@dataclass(frozen=True)
class ClosureVerdict:
    member: bool
    r: int | None
    k_max: int

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non_member_up_to_cap"

    def __bool__(self):
        return self.member


def integral_closure_member(f: Polynomial, I: Ideal, k_max: int = DEFAULT_K_MAX) -> ClosureVerdict:
    """f is integral over I iff I is a reduction of I + (f)."""
    if f.ring != I.ring:
        raise ValueError("f and I live in different rings")
    big = I + Ideal(I.ring, [f])
    rep = is_reduction(I, big, k_max)
    return ClosureVerdict(rep.is_reduction, rep.r, k_max)
