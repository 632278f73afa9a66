"""Buchberger's algorithm, normal forms, elimination and Krull dimension.

The kernel works on raw ``{monomial: coeff}`` dicts of a single ring (see
:mod:`idealcore.ring` for the monomial encoding).  Pairs are pruned with the
Gebauer-Moeller criteria and selected by sugar, then by lcm.  For input that
is homogeneous with respect to a grading the computation can be truncated at
a degree bound; the result is then a Groebner basis of everything up to that
degree, which is all a membership test for lower-degree forms needs.
"""

from __future__ import annotations


import hashlib
from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush
from itertools import combinations
from typing import TYPE_CHECKING, Iterable, Sequence

from .ring import GREVLEX, Polynomial, PolyRing, TermOrder

if TYPE_CHECKING:
    from .ideal import Ideal


class _Reducers:
    """Monic reducers with a divisor-lookup cache.

    Reducers are only ever appended, so a cached hit stays valid and a cached
    miss only has to be re-checked against reducers added since.
    """

    __slots__ = ("ring", "items", "_cache")

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.items: list[tuple[int, int, list]] = []
        self._cache: dict[int, int] = {}

    def add(self, lm: int, tail: list):
        self.items.append((lm, lm & self.ring.emask, tail))

    def find(self, m: int):
        e = m & self.ring.emask
        guard = self.ring.guard
        items = self.items
        hit = self._cache.get(e)
        start = 0
        if hit is not None:
            if hit >= 0:
                return items[hit]
            start = -hit - 1
        for k in range(start, len(items)):
            if not ((e - items[k][1]) & guard):
                self._cache[e] = k
                return items[k]
        self._cache[e] = -len(items) - 1
        return None


def _reduce(f: dict, reducers: _Reducers, ring: PolyRing, full: bool = True) -> dict:
    """Remainder of ``f`` modulo monic ``reducers`` (full or top reduction)."""
    if not f:
        return {}
    p, guard = ring.p, ring.guard
    f = dict(f)
    heap = [-m for m in f]
    heapify(heap)
    rem: dict = {}
    find = reducers.find
    while heap:
        m = -heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        r = find(m)
        if r is None:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
            continue
        shift = m - r[0]
        for tm, tc in r[2]:
            nm = tm + shift
            v = f.get(nm)
            if v is None:
                if nm & guard:
                    raise OverflowError("exponent overflow during reduction")
                f[nm] = (-c * tc) % p if p else -c * tc
                heappush(heap, -nm)
            else:
                v = (v - c * tc) % p if p else v - c * tc
                if v:
                    f[nm] = v
                else:
                    del f[nm]
    return rem


def _monic(d: dict, ring: PolyRing) -> tuple[int, list]:
    lm = max(d)
    inv = ring.field.inv(d[lm])
    p = ring.p
    tail = [(m, (c * inv % p) if p else c * inv) for m, c in d.items() if m != lm]
    return lm, tail


@dataclass
class _Elt:
    lm: int
    tail: list
    sugar: int
    active: bool = True


def _wdeg(ring: PolyRing, weights, m: int) -> int:
    e = ring.decode(m)
    if weights is None:
        return sum(e)
    return sum(w * x for w, x in zip(weights, e))


def _buchberger(ring: PolyRing, polys: list[dict], weights=None,
                degree_bound: int | None = None) -> tuple[list[tuple[int, list]], bool]:
    """Reduced basis of ``polys`` as monic ``(lm, tail)`` pairs, plus a flag
    telling whether the degree bound actually cut anything off."""
    emask, guard = ring.emask, ring.guard
    elts: list[_Elt] = []
    reducers = _Reducers(ring)
    pairs: list[tuple] = []   # (sugar, lcm, i, j); i == -1 marks an input generator

    inputs = []
    cut = False
    for d in polys:
        if d:
            s = max(_wdeg(ring, weights, m) for m in d)
            if degree_bound is not None and s > degree_bound:
                cut = True
                continue
            inputs.append(d)
            pairs.append((s, max(d), -1, len(inputs) - 1))

    def lcm(a, b):
        return ring.mlcm(a, b)

    def divides(a, b):
        return not (((b & emask) - (a & emask)) & guard)

    def coprime(a, b):
        ea, eb = ring.decode(a), ring.decode(b)
        return all(not (x and y) for x, y in zip(ea, eb))

    def update(h: int):
        nonlocal pairs, cut
        eh = elts[h]
        hl = eh.lm
        cands = []
        for g, eg in enumerate(elts[:-1]):
            if eg.active:
                L = lcm(hl, eg.lm)
                cands.append((g, L, coprime(hl, eg.lm)))
        kept = []
        for idx, (g, L, cp) in enumerate(cands):
            if cp:
                kept.append((g, L, cp))
                continue
            dominated = False
            for g2, L2, _ in cands[idx + 1:]:
                if divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                for g2, L2, _ in kept:
                    if divides(L2, L):
                        dominated = True
                        break
            if not dominated:
                kept.append((g, L, cp))
        new = []
        for g, L, cp in kept:
            if not cp:
                eg = elts[g]
                dl = _wdeg(ring, weights, L)
                s = max(eg.sugar + dl - _wdeg(ring, weights, eg.lm),
                        eh.sugar + dl - _wdeg(ring, weights, hl))
                if degree_bound is not None and dl > degree_bound:
                    cut = True
                    continue
                new.append((s, L, g, h))
        survivors = []
        for pr in pairs:
            s, L, i, j = pr
            if i >= 0 and divides(hl, L):
                if lcm(elts[i].lm, hl) != L and lcm(elts[j].lm, hl) != L:
                    continue
            survivors.append(pr)
        pairs = survivors + new
        for eg in elts[:-1]:
            if eg.active and divides(hl, eg.lm):
                eg.active = False

    p = ring.p
    while pairs:
        k = min(range(len(pairs)), key=lambda t: (pairs[t][0], pairs[t][1]))
        s, L, i, j = pairs[k]
        pairs[k] = pairs[-1]
        pairs.pop()
        if i < 0:
            spoly = inputs[j]
        else:
            a, b = elts[i], elts[j]
            sa, sb = L - a.lm, L - b.lm
            spoly = {}
            for m, c in a.tail:
                spoly[m + sa] = c
            for m, c in b.tail:
                nm = m + sb
                v = spoly.get(nm)
                if v is None:
                    spoly[nm] = (-c) % p if p else -c
                else:
                    v = (v - c) % p if p else v - c
                    if v:
                        spoly[nm] = v
                    else:
                        del spoly[nm]
        h = _reduce(spoly, reducers, ring)
        if not h:
            continue
        lm, tail = _monic(h, ring)
        if lm == 0:
            return [(0, [])], False
        elts.append(_Elt(lm, tail, s))
        reducers.add(lm, tail)
        update(len(elts) - 1)

    # interreduce the surviving elements into the reduced basis
    basis = [e for e in elts if e.active]
    basis.sort(key=lambda e: e.lm)
    minimal = []
    for e in basis:
        if not any(divides(o.lm, e.lm) for o in minimal):
            minimal.append(e)
    out = []
    for idx, e in enumerate(minimal):
        others = _Reducers(ring)
        for k, o in enumerate(minimal):
            if k != idx:
                others.add(o.lm, o.tail)
        tail = _reduce(dict(e.tail), others, ring)
        out.append((e.lm, sorted(tail.items(), reverse=True)))
    out.sort(key=lambda t: t[0], reverse=True)
    return out, cut


def _fingerprint(polys: Iterable[Polynomial]) -> str:
    h = hashlib.sha1()
    for f in polys:
        h.update(str(f).encode())
        h.update(b";")
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis.

    ``degree_bound`` is None for a complete basis; otherwise the basis is only
    guaranteed up to that (weighted) degree.
    """

    elements: tuple[Polynomial, ...]
    order: TermOrder
    source: str
    ring: PolyRing
    degree_bound: int | None = None
    weights: tuple[int, ...] | None = None
    _reducers: _Reducers | None = field(default=None, repr=False, compare=False)

    @property
    def is_complete(self) -> bool:
        return self.degree_bound is None

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def is_zero(self) -> bool:
        return not self.elements

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.lm for g in self.elements]

    def _red(self) -> _Reducers:
        red = self._reducers
        if red is None:
            red = _Reducers(self.ring)
            for g in self.elements:
                lm = max(g._t)
                red.add(lm, [(m, c) for m, c in g._t.items() if m != lm])
            object.__setattr__(self, "_reducers", red)
        return red

    def reduce(self, f: Polynomial) -> Polynomial:
        g = f.to_ring(self.ring)
        return Polynomial(self.ring, _reduce(g._t, self._red(), self.ring)).to_ring(f.ring)

    def contains(self, f: Polynomial) -> bool:
        g = f.to_ring(self.ring)
        if self.degree_bound is not None and g:
            if not g.is_homogeneous(self.weights):
                raise ValueError("truncated basis only decides homogeneous elements")
            if max(g.weighted_degrees(self.weights)) > self.degree_bound:
                raise ValueError("element degree exceeds the truncation bound")
        return not _reduce(g._t, self._red(), self.ring, full=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def groebner_basis(gens: Sequence[Polynomial], order: TermOrder | None = None, *,
                   degree_bound: int | None = None,
                   weights: Sequence[int] | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``order`` defaults to the ring's own order.  A ``degree_bound`` requires
    the generators to be homogeneous for ``weights`` (standard grading by
    default) and yields a basis valid up to that degree.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator (use the zero polynomial)")
    ring0 = gens[0].ring
    for g in gens:
        g._check(gens[0])
    ring = ring0.with_order(order) if order is not None else ring0
    moved = [g.to_ring(ring) for g in gens if g]
    w = tuple(weights) if weights is not None else None
    if degree_bound is not None and not all(g.is_homogeneous(w) for g in moved):
        raise ValueError("degree truncation needs homogeneous generators")
    raw, cut = _buchberger(ring, [g._t for g in moved], w, degree_bound)
    if not cut:
        degree_bound = None
    elements = []
    for lm, tail in raw:
        d = dict(tail)
        d[lm] = ring.field(1)
        elements.append(Polynomial(ring, d))
    return GroebnerBasis(tuple(elements), ring.order, _fingerprint(gens), ring,
                         degree_bound, w)


def normal_form(f: Polynomial, basis: Sequence[Polynomial] | GroebnerBasis,
                order: TermOrder | None = None) -> Polynomial:
    """Fully reduced remainder of ``f`` by ``basis``.

    ``basis`` may be any list of polynomials; division is then the plain
    multivariate division algorithm (the remainder is unique only when the
    list is a Groebner basis).
    """
    if isinstance(basis, GroebnerBasis):
        return basis.reduce(f)
    ring = f.ring.with_order(order) if order is not None else f.ring
    red = _Reducers(ring)
    for b in basis:
        if b.ring.variables != f.ring.variables or b.ring.field != f.ring.field:
            raise ValueError("ring mismatch between polynomial and basis")
        b = b.to_ring(ring)
        if b:
            red.add(*_monic(b._t, ring))
    g = f.to_ring(ring)
    return Polynomial(ring, _reduce(g._t, red, ring)).to_ring(f.ring)


def division(f: Polynomial, divisors: Sequence[Polynomial]) -> tuple[list[Polynomial], Polynomial]:
    """Division with bookkeeping: ``f == sum(q_i * d_i) + r``."""
    ring = f.ring
    quots = [ring.zero for _ in divisors]
    rest, rem = f, ring.zero
    while rest:
        lm, lc = rest.lm, rest.lc
        for k, d in enumerate(divisors):
            if d and all(a >= b for a, b in zip(lm, d.lm)):
                shift = tuple(a - b for a, b in zip(lm, d.lm))
                q = ring.field(lc) * ring.field.inv(d.lc)
                term = ring.monomial(shift) * q
                quots[k] = quots[k] + term
                rest = rest - term * d
                break
        else:
            lt = ring.monomial(lm) * lc
            rem = rem + lt
            rest = rest - lt
    return quots, rem


def lift(f: Polynomial, gens: Sequence[Polynomial]) -> list[Polynomial] | None:
    """Cofactors ``q`` with ``f == sum(q_i * gens_i)``, or None if f is not in the ideal.

    Runs a separate, criterion-free Buchberger that tracks every basis
    element as a combination of ``gens``; deliberately independent of the
    main kernel so it can be used to cross-check it.
    """
    ring = f.ring
    n = len(gens)
    basis: list[tuple[Polynomial, list[Polynomial]]] = []
    for k, g in enumerate(gens):
        if g:
            basis.append((g, [ring.one if i == k else ring.zero for i in range(n)]))

    def reduce_tracked(h, cof):
        rest, rem = h, ring.zero
        cof = list(cof)
        while rest:
            lm, lc = rest.lm, rest.lc
            for b, bc in basis:
                if all(a >= c for a, c in zip(lm, b.lm)):
                    shift = tuple(a - c for a, c in zip(lm, b.lm))
                    term = ring.monomial(shift) * (ring.field(lc) * ring.field.inv(b.lc))
                    rest = rest - term * b
                    cof = [c - term * x for c, x in zip(cof, bc)]
                    break
            else:
                lt = ring.monomial(lm) * lc
                rem = rem + lt
                rest = rest - lt
        return rem, cof

    def pair(i, j):
        L = tuple(max(x, y) for x, y in zip(basis[i][0].lm, basis[j][0].lm))
        return ring.encode(L), i, j

    # normal selection (smallest lcm first); coprime leading terms are skipped
    todo = [pair(i, j) for i, j in combinations(range(len(basis)), 2)]
    heapify(todo)
    while todo:
        _, i, j = heappop(todo)
        (a, ac), (b, bc) = basis[i], basis[j]
        if all(x == 0 or y == 0 for x, y in zip(a.lm, b.lm)):
            continue
        L = tuple(max(x, y) for x, y in zip(a.lm, b.lm))
        ma = ring.monomial(tuple(x - y for x, y in zip(L, a.lm))) * ring.field.inv(a.lc)
        mb = ring.monomial(tuple(x - y for x, y in zip(L, b.lm))) * ring.field.inv(b.lc)
        s = ma * a - mb * b
        sc = [ma * x - mb * y for x, y in zip(ac, bc)]
        r, rc = reduce_tracked(s, sc)
        if r:
            basis.append((r, rc))
            for k in range(len(basis) - 1):
                heappush(todo, pair(k, len(basis) - 1))

    rem, cof = reduce_tracked(f, [ring.zero] * n)
    if rem:
        return None
    return [-c for c in cof]


# elimination / dimension --------------------------------------------------

def elimination_order(drop_count: int) -> TermOrder:
    return TermOrder.block(drop_count, GREVLEX, GREVLEX)


def eliminate_polys(gens: Sequence[Polynomial], drop_count: int, *,
                    weights: Sequence[int] | None = None,
                    degree_bound: int | None = None) -> list[Polynomial]:
    """Generators of ``(gens) ∩ k[x_{drop_count+1}, ...]`` in the smaller ring."""
    gens = list(gens)
    ring = gens[0].ring
    if not 0 <= drop_count < ring.nvars:
        raise ValueError(f"drop_count must be in [0, {ring.nvars - 1}], got {drop_count}")
    small = ring.with_variables(ring.variables[drop_count:], GREVLEX)
    if drop_count == 0:
        gb = groebner_basis(gens, GREVLEX, weights=weights, degree_bound=degree_bound)
        return [g.to_ring(small) for g in gb.elements]
    gb = groebner_basis(gens, elimination_order(drop_count), weights=weights,
                        degree_bound=degree_bound)
    out = []
    for g in gb.elements:
        if not any(g.lm[:drop_count]):
            # block order: a t-free leading term means a t-free polynomial
            out.append(g.to_ring(small))
    return out


def eliminate(I: Ideal | Sequence[Polynomial], drop_count: int) -> Ideal:
    """Eliminate the first ``drop_count`` variables; result lives in the smaller ring."""
    from .ideal import Ideal

    gens = I.gens if isinstance(I, Ideal) else list(I)
    ring = gens[0].ring
    if not 0 <= drop_count < ring.nvars:
        raise ValueError(f"drop_count must be in [0, {ring.nvars - 1}], got {drop_count}")
    polys = eliminate_polys(gens, drop_count)
    small = ring.with_variables(ring.variables[drop_count:], GREVLEX)
    return Ideal(small, polys)


def max_independent_set(lead_monomials: Sequence[Sequence[int]], nvars: int) -> tuple[int, ...]:
    """Largest set of variables containing the support of no leading monomial."""
    supports = []
    for e in lead_monomials:
        supports.append(sum(1 << i for i, x in enumerate(e) if x))
    full = (1 << nvars) - 1
    best = None
    for mask in sorted(range(full + 1), key=lambda s: -bin(s).count("1")):
        if all(sup & ~mask for sup in supports):
            best = mask
            break
    return tuple(i for i in range(nvars) if best >> i & 1)


def dimension(I: Ideal | GroebnerBasis) -> int:
    """Krull dimension of R/I; -1 for the unit ideal."""
    from .ideal import Ideal

    gb = I.groebner() if isinstance(I, Ideal) else I
    if not gb.is_complete:
        raise ValueError("dimension needs a complete Groebner basis")
    if gb.is_unit():
        return -1
    return len(max_independent_set(gb.leading_monomials(), gb.ring.nvars))
