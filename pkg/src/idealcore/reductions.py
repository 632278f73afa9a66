"""Reductions, reduction numbers, analytic spread and random minimal reductions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import dimension, eliminate_polys
from .ideal import Ideal
from .ring import PolyRing, TermOrder

DEFAULT_R_MAX = 30


class NotASubideal(ValueError):
    pass


class ReductionCapError(RuntimeError):
    """No witness r was found up to the cap; the verdict is unknown."""


class GenericityFailure(RuntimeError):
    def __init__(self, message: str, seeds_tried: Sequence[str]):
        super().__init__(f"{message}; seeds tried: {', '.join(seeds_tried)}")
        self.seeds_tried = tuple(seeds_tried)


@dataclass(frozen=True)
class ReductionReport:
    is_reduction: bool
    r: int | None
    cap_hit: bool
    r_max: int
    seed: int | None = None
    stream: str | None = None

    @property
    def verdict(self) -> str:
        return "reduction" if self.is_reduction else "unknown"


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    max_retries: int = 5
    excluded_coeffs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def is_reduction(J: Ideal, I: Ideal, r_max: int = DEFAULT_R_MAX) -> ReductionReport:
    """Least r <= r_max with I^(r+1) = J I^r, or a cap-hit report.

    J I^r is always inside I^(r+1) once J is inside I, so one containment
    test per r suffices.
    """
    if r_max < 0:
        raise ValueError("r_max must be non-negative")
    if J.ring != I.ring:
        raise ValueError("ideals live in different rings")
    if not J.issubset(I):
        raise NotASubideal("J is not contained in I")
    for r in range(r_max + 1):
        if (I ** (r + 1)).issubset(J * I ** r):
            return ReductionReport(True, r, False, r_max)
    return ReductionReport(False, None, True, r_max)


def reduction_number(J: Ideal, I: Ideal, r_max: int = DEFAULT_R_MAX) -> int:
    rep = is_reduction(J, I, r_max)
    if rep.cap_hit:
        raise ReductionCapError(f"no reduction witness up to r = {r_max}")
    return rep.r


def analytic_spread(I: Ideal) -> int:
    """Krull dimension of the special fiber ring of a homogeneous ideal.

    The Rees ideal is the kernel of k[x, y] -> R[t], y_i -> t f_i, obtained by
    eliminating t from (y_i - t f_i).  Modding out the variables x leaves the
    fiber ring k[y]/F.
    """
    if I.is_zero():
        raise ValueError("analytic spread of the zero ideal")
    if I.is_unit():
        raise ValueError("analytic spread of the unit ideal")
    if not I.is_homogeneous():
        raise ValueError("analytic spread needs a homogeneous ideal")
    ring = I.ring
    gens = list(I.minimal_generators().gens)
    if all(g.is_monomial() and g.degree() == 1 for g in gens):
        return len(gens)
    t = ring.fresh_name("t")
    taken = set(ring.variables) | {t}
    ys = []
    for i in range(len(gens)):
        name = f"y{i}"
        while name in taken:
            name = "_" + name
        taken.add(name)
        ys.append(name)
    big = ring.with_variables([t, *ys, *ring.variables], TermOrder.block(1))
    tt = big.gen(t)
    rel = [big.gen(y) - tt * g.to_ring(big) for y, g in zip(ys, gens)]
    degs = [g.degree() for g in gens]
    weights = [0, *degs, *([1] * ring.nvars)]
    rees = eliminate_polys(rel, 1, weights=weights, degree_bound=None)
    # fiber ring: set every x to zero, keep only the y-part
    fiber_ring = PolyRing(ys, ring.field)
    keep = []
    for f in rees:
        terms = [(e[:len(ys)], c) for e, c in f.terms() if not any(e[len(ys):])]
        if terms:
            keep.append(fiber_ring.from_terms(terms))
    return dimension(Ideal(fiber_ring, keep))


def minimal_generator_count(I: Ideal) -> int:
    return len(I.minimal_generators().gens)


def _random_coeff(rng: random.Random, ring: PolyRing, excluded) -> int:
    bound = ring.p - 1 if ring.p else 2 ** 16
    while True:
        c = rng.randint(1, bound)
        if c not in excluded and ring.field(c) not in excluded:
            return c


def random_combinations(I: Ideal, count: int, rng: random.Random,
                        excluded=frozenset()) -> Ideal:
    """``count`` random field-linear combinations of the minimal generators."""
    ring = I.ring
    gens = I.minimal_generators().gens
    out = []
    for _ in range(count):
        f = ring.zero
        for g in gens:
            f = f + g * _random_coeff(rng, ring, excluded)
        out.append(f)
    return Ideal(ring, out)


def stream_rng(seed: int, stream: str) -> random.Random:
    """Independent reproducible substream; identical (seed, stream) -> identical draws."""
    return random.Random(f"{seed}/{stream}")


def sample_minimal_reduction(I: Ideal, ell: int, cfg: SamplerConfig | None = None,
                             r_max: int = DEFAULT_R_MAX, index: int | str = 0
                             ) -> tuple[Ideal, ReductionReport]:
    """A random ``ell``-generated reduction of an equigenerated ideal.

    Each attempt draws from the substream (cfg.seed, index, attempt), so the
    i-th sample is reproducible independently of every other sample.
    """
    cfg = cfg or SamplerConfig()
    if not I.is_homogeneous() or not I.is_equigenerated():
        raise ValueError("sampling needs a homogeneous ideal generated in one degree")
    if I.is_zero() or I.is_unit():
        raise ValueError("sampling needs a nonzero proper ideal")
    mins = I.minimal_generators()
    if ell < 1:
        raise ValueError("ell must be positive")
    if len(mins.gens) <= ell:
        return mins, ReductionReport(True, 0, False, r_max, cfg.seed, None)
    tried = []
    dim_I = None
    for attempt in range(cfg.max_retries):
        stream = f"{index}/{attempt}"
        tried.append(f"{cfg.seed}/{stream}")
        J = random_combinations(mins, ell, stream_rng(cfg.seed, stream), cfg.excluded_coeffs)
        if dim_I is None:
            dim_I = I.dimension()
        # a reduction has the same radical, so a dimension jump rules J out at once
        if J.dimension() != dim_I:
            continue
        rep = is_reduction(J, I, r_max)
        if rep.is_reduction:
            return J, ReductionReport(True, rep.r, False, r_max, cfg.seed, stream)
    raise GenericityFailure(f"no {ell}-generated reduction found", tried)
