"""Ideals of a polynomial ring and their arithmetic.

Equality is mathematical (reduced Groebner bases under grevlex coincide).
Each ``Ideal`` memoizes its Groebner bases per order; the memo is guarded by
a lock, so concurrent callers compute a given basis once.
"""

from __future__ import annotations

import threading
from math import comb
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groebner import (GroebnerBasis, _reduce, dimension, eliminate, eliminate_polys,
                       groebner_basis)
from .linalg import graded_contains, graded_intersection
from .ring import GREVLEX, Polynomial, PolyRing, TermOrder, parse_poly_list

__all__ = [
    "Ideal", "HeightReport", "ideal_sum", "ideal_product", "ideal_power",
    "ideal_intersect", "ideal_colon", "ideal_equal", "ideal_member", "height",
    "height_report", "eliminate", "dimension", "maximal_ideal",
]

LINEAR_PIECE_LIMIT = 1500   # monomials per degree for the linear containment route


class Ideal:
    def __init__(self, ring: PolyRing, gens: str | Iterable[Polynomial | str] = ()):
        if isinstance(gens, str):
            gens = parse_poly_list(gens, ring)
        out: list[Polynomial] = []
        seen = set()
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError(f"generator {g} is not in {ring!r}")
            if g and g not in seen:
                seen.add(g)
                out.append(g)
        self.ring = ring
        self.gens: tuple[Polynomial, ...] = tuple(out)
        self._gb: dict[tuple, GroebnerBasis] = {}
        self._lock = threading.RLock()
        self._homog: bool | None = None
        self._saturation_degree: int | None = None
        self._powers: dict[int, Ideal] = {}

    __hash__ = None  # equality is mathematical

    # basic predicates -------------------------------------------------------
    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    def __str__(self):
        return "(" + (", ".join(map(str, self.gens)) or "0") + ")"

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def _check(self, other: Ideal):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.gens):
            return True
        return not self.is_zero() and self.groebner().is_unit()

    def is_homogeneous(self) -> bool:
        if self._homog is None:
            self._homog = all(g.is_homogeneous() for g in self.gens)
        return self._homog

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def degrees(self) -> list[int]:
        return [g.degree() for g in self.gens]

    def is_equigenerated(self) -> bool:
        return self.is_homogeneous() and len(set(self.degrees())) <= 1

    # Groebner bases ---------------------------------------------------------
    def groebner(self, order: TermOrder | None = None, *,
                 degree_bound: int | None = None) -> GroebnerBasis:
        """Reduced basis (memoized).  ``degree_bound`` asks for a truncated one."""
        order = order or self.ring.order
        key = (order,)
        with self._lock:
            have = self._gb.get(key)
            if have is not None and (have.is_complete or (
                    degree_bound is not None and have.degree_bound >= degree_bound)):
                return have
            gens = list(self.gens) or [self.ring.zero]
            if degree_bound is not None and not self.is_homogeneous():
                degree_bound = None
            gb = groebner_basis(gens, order, degree_bound=degree_bound)
            self._gb[key] = gb
            return gb

    def contains(self, f: Polynomial) -> bool:
        """Ideal membership: NF(f, GB) == 0."""
        if f.ring != self.ring:
            raise ValueError("ring mismatch in membership test")
        if not f:
            return True
        if self.is_zero():
            return False
        if self.is_homogeneous() and f.is_homogeneous():
            gb = self.groebner(degree_bound=f.degree())
        else:
            gb = self.groebner()
        return gb.contains(f)

    __contains__ = contains

    def issubset(self, other: Ideal, method: str = "auto") -> bool:
        """Containment.

        ``groebner`` reduces modulo a (truncated) basis of ``other``; ``linear``
        compares graded pieces directly and needs homogeneous input over
        GF(p).  ``auto`` uses ``linear`` when it applies and the pieces are
        small, unless a basis of ``other`` is already cached.
        """
        self._check(other)
        if other.is_zero():
            return self.is_zero()
        hom = self.is_homogeneous() and other.is_homogeneous()
        if method == "auto":
            method = "groebner"
            if hom and self.ring.p and self.gens and not other._gb:
                top = max(self.degrees())
                if comb(top + self.ring.nvars - 1, top) <= LINEAR_PIECE_LIMIT:
                    method = "linear"
        if method == "linear":
            if not (hom and self.ring.p):
                raise ValueError("linear containment needs homogeneous ideals over GF(p)")
            return graded_contains(self.gens, other.gens, self.ring)
        if method != "groebner":
            raise ValueError(f"unknown containment method {method!r}")
        if hom and self.gens:
            gb = other.groebner(degree_bound=max(self.degrees()))
            return all(gb.contains(g) for g in self.gens)
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other: Ideal) -> bool:
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def reduced_gens(self) -> tuple[Polynomial, ...]:
        """Canonical generators: the reduced grevlex basis, printed as (1) when unit."""
        gb = self.groebner(GREVLEX)
        return tuple(g.to_ring(self.ring) for g in gb.elements)

    # arithmetic sugar -------------------------------------------------------
    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal | Polynomial) -> Ideal:
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [g * other for g in self.gens])
        return ideal_product(self, other)

    def __pow__(self, j: int) -> Ideal:
        with self._lock:
            hit = self._powers.get(j)
            if hit is None:
                hit = ideal_power(self, j)
                self._powers[j] = hit
            return hit

    def __and__(self, other: Ideal) -> Ideal:
        return ideal_intersect(self, other)

    def colon(self, other: Ideal | Polynomial) -> Ideal:
        if isinstance(other, Polynomial):
            other = Ideal(self.ring, [other])
        return ideal_colon(self, other)

    def dimension(self) -> int:
        return dimension(self)

    def height(self) -> int:
        return height(self)

    def saturation_degree(self) -> int | None:
        """Least d with m^d ⊆ I for m = (all variables); None unless I is m-primary."""
        if self._saturation_degree is not None:
            return self._saturation_degree
        if self.is_zero():
            return None
        gb = self.groebner(GREVLEX)
        if gb.is_unit():
            self._saturation_degree = 0
            return 0
        if dimension(gb) != 0:
            return None
        leads = gb.leading_monomials()
        n = self.ring.nvars
        top = -1
        frontier = {(0,) * n}
        seen = set(frontier)
        while frontier:
            nxt = set()
            for e in frontier:
                if any(all(a >= b for a, b in zip(e, l)) for l in leads):
                    continue
                top = max(top, sum(e))
                for i in range(n):
                    f = e[:i] + (e[i] + 1,) + e[i + 1:]
                    if f not in seen:
                        seen.add(f)
                        nxt.add(f)
            frontier = nxt
        self._saturation_degree = top + 1
        return top + 1

    def minimal_generators(self) -> Ideal:
        """A minimal homogeneous generating set (input order kept within degrees)."""
        if not self.is_homogeneous() or len(self.gens) <= 1:
            return self
        if self.is_monomial():
            return Ideal(self.ring, _minimal_monomials(self.gens))
        by_deg: dict[int, list[Polynomial]] = {}
        for g in self.gens:
            by_deg.setdefault(g.degree(), []).append(g)
        kept: list[Polynomial] = []
        field = self.ring.field
        for d in sorted(by_deg):
            if kept:
                gb = groebner_basis(kept, GREVLEX, degree_bound=d)
                rems = [gb.reduce(g) for g in by_deg[d]]
            else:
                rems = list(by_deg[d])
            rows: list[dict] = []
            for g, r in zip(by_deg[d], rems):
                if _independent_append(rows, dict(r._t), field):
                    kept.append(g)
        return Ideal(self.ring, kept)


def _independent_append(rows: list[dict], vec: dict, field) -> bool:
    """Gaussian elimination step; appends and returns True if vec is independent."""
    p = field.characteristic
    vec = {m: c for m, c in vec.items() if c}
    for piv, row in rows:
        c = vec.get(piv)
        if c:
            for m, v in row.items():
                nv = vec.get(m, 0) - c * v
                if p:
                    nv %= p
                if nv:
                    vec[m] = nv
                else:
                    vec.pop(m, None)
    if not vec:
        return False
    piv = max(vec)
    inv = field.inv(vec[piv])
    rows.append((piv, {m: (v * inv % p if p else v * inv) for m, v in vec.items()}))
    return True


def _minimal_monomials(gens: Sequence[Polynomial]) -> list[Polynomial]:
    ring = gens[0].ring
    monos = sorted({max(g._t) for g in gens}, key=lambda m: (ring.mdegree(m), m))
    keep: list[int] = []
    for m in monos:
        if not any(ring.divides(k, m) for k in keep):
            keep.append(m)
    one = ring.field(1)
    return [Polynomial(ring, {m: one}) for m in keep]


def maximal_ideal(ring: PolyRing) -> Ideal:
    """The irrelevant ideal generated by all variables."""
    return Ideal(ring, ring.gens)


# operations -----------------------------------------------------------------

def _same(I: Ideal, J: Ideal):
    I._check(J)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    return Ideal(I.ring, list(I.gens) + list(J.gens))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    gens = [a * b for a in I.gens for b in J.gens]
    if gens and all(g.is_monomial() for g in gens):
        gens = _minimal_monomials(gens)
    return Ideal(I.ring, gens)


def ideal_power(I: Ideal, j: int) -> Ideal:
    if j < 0:
        raise ValueError("ideal power needs j >= 0")
    if j == 0:
        return Ideal(I.ring, [I.ring.one])
    if j == 1:
        return I
    result = ideal_product(I ** (j - 1), I)
    return result.minimal_generators() if I.is_homogeneous() else result


def _intersection_bound(I: Ideal, J: Ideal) -> int | None:
    """Degree by which I ∩ J is generated, when one side is m-primary."""
    if not (I.is_homogeneous() and J.is_homogeneous()):
        return None
    best = None
    for A, B in ((I, J), (J, I)):
        dA = A.saturation_degree()
        if dA is None:
            continue
        top = max(g.degree() for g in B.minimal_generators().gens)
        cand = max(dA, top)
        best = cand if best is None else min(best, cand)
    return best


def ideal_intersect(I: Ideal, J: Ideal, method: str = "auto") -> Ideal:
    """I ∩ J.

    ``elimination`` eliminates t from t*I + (1 - t)*J and always applies.
    ``graded`` does linear algebra degree by degree and needs homogeneous
    input with one side m-primary; ``auto`` picks it whenever it applies.
    """
    _same(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    t = ring.fresh_name("t")
    big = PolyRing((t,) + ring.variables, ring.field,
                   TermOrder.block(1, GREVLEX, GREVLEX))
    tt = big.gen(0)
    gens = [tt * f.to_ring(big) for f in I.gens]
    gens += [(1 - tt) * g.to_ring(big) for g in J.gens]
    homogeneous = I.is_homogeneous() and J.is_homogeneous()
    bound = _intersection_bound(I, J)
    if method not in ("auto", "graded", "elimination"):
        raise ValueError(f"unknown intersection method {method!r}")
    if method == "graded" and bound is None:
        raise ValueError("graded intersection needs homogeneous ideals, one of them m-primary")
    if method != "elimination" and bound is not None:
        A, B = (I, J) if I.saturation_degree() is not None else (J, I)
        return _graded_intersect(A, B, bound)
    weights = (0,) + (1,) * ring.nvars if homogeneous else None
    polys = eliminate_polys(gens, 1, weights=weights, degree_bound=bound)
    return Ideal(ring, [p.to_ring(ring) for p in polys])


def _axpy(vec: dict, c, row: dict, p: int):
    """vec -= c * row, in place."""
    for m, v in row.items():
        nv = vec.get(m, 0) - c * v
        if p:
            nv %= p
        if nv:
            vec[m] = nv
        else:
            vec.pop(m, None)


def _shift(ring: PolyRing, f: Polynomial, exps) -> dict:
    s = ring.encode(exps)
    out = {m + s: c for m, c in f._t.items()}
    if any(m & ring.guard for m in out):
        raise OverflowError("exponent overflow")
    return out


def _graded_intersect(A: Ideal, B: Ideal, bound: int) -> Ideal:
    """A ∩ B for homogeneous ideals when A ∩ B is generated in degrees <= bound.

    (A ∩ B)_d is the kernel of B_d -> R_d / A_d, the map being the normal
    form modulo a truncated basis of A.  In each degree only elements not
    already in the ideal of lower-degree findings are kept.
    """
    ring = A.ring
    field = ring.field
    p = field.characteristic
    bgens = B.minimal_generators().gens
    lo = min(g.degree() for g in bgens)
    if p:
        return Ideal(ring, graded_intersection(A.minimal_generators().gens, bgens, ring, lo, bound))
    gbA = A.groebner(GREVLEX, degree_bound=bound)
    red = gbA._red()
    found: list[Polynomial] = []
    for d in range(lo, bound + 1):
        span: list = []
        for g in found:
            for e in ring.monomials_of_degree(d - g.degree()):
                _independent_append(span, _shift(ring, g, e), field)
        rows: list = []   # (pivot, normal form, element of B_d)
        for g in bgens:
            if g.degree() > d:
                continue
            for e in ring.monomials_of_degree(d - g.degree()):
                elt = _shift(ring, g, e)
                nf = dict(_reduce(dict(elt), red, ring))
                for piv, rnf, relt in rows:
                    c = nf.get(piv)
                    if c:
                        _axpy(nf, c, rnf, p)
                        _axpy(elt, c, relt, p)
                if nf:
                    piv = max(nf)
                    inv = field.inv(nf[piv])
                    rows.append((piv, {m: field(v * inv) for m, v in nf.items()},
                                 {m: field(v * inv) for m, v in elt.items()}))
                elif elt and _independent_append(span, elt, field):
                    found.append(Polynomial(ring, elt).monic())
    return Ideal(ring, found)


def colon_by_element(I: Ideal, g: Polynomial) -> Ideal:
    """I : (g) = (I ∩ (g)) / g."""
    ring = I.ring
    if not g:
        raise ValueError("colon by zero ideal")
    if I.contains(g):
        return Ideal(ring, [ring.one])
    inter = ideal_intersect(I, Ideal(ring, [g]))
    return Ideal(ring, [h.exact_div(g) for h in inter.gens])


def ideal_colon(I: Ideal, J: Ideal) -> Ideal:
    """{f : f*J ⊆ I}, intersected over the generators of J."""
    _same(I, J)
    if J.is_zero():
        raise ValueError("colon by zero ideal")
    gens = J.minimal_generators().gens if J.is_homogeneous() else J.gens
    result = None
    for g in gens:
        part = colon_by_element(I, g)
        result = part if result is None else ideal_intersect(result, part)
    return result


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """True iff the reduced grevlex Groebner bases coincide."""
    _same(I, J)
    if I is J:
        return True
    a = I.groebner(GREVLEX)
    b = J.groebner(GREVLEX)
    return a.elements == b.elements


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


@dataclass(frozen=True)
class HeightReport:
    value: int
    exact: bool
    note: str


def height_report(I: Ideal, unmixed_hint: bool = False) -> HeightReport:
    """Height as numvars - dim(R/I).

    In the polynomial ring this is always the height.  For the local ring at
    the irrelevant ideal it agrees when I is homogeneous (all minimal primes
    are then graded) or when the caller vouches for unmixedness.
    """
    if I.is_zero():
        raise ValueError("height of the zero ideal is not defined here")
    d = dimension(I)
    if d < 0:
        raise ValueError("height of the unit ideal is not defined here")
    exact = I.is_homogeneous() or unmixed_hint
    note = ("graded ideal: equals the local height" if I.is_homogeneous()
            else "equals the local height only if I is unmixed inside the maximal ideal")
    return HeightReport(I.ring.nvars - d, exact, note)


def height(I: Ideal, unmixed_hint: bool = False) -> int:
    return height_report(I, unmixed_hint).value
