"""Dense linear algebra over GF(p) for graded pieces of homogeneous ideals.

Only prime fields are handled here; entries are int64 residues in [0, p).
With p < 2^31 a product of two residues fits, and so does a sum of a few
million of them, which bounds the matrix sizes we meet by a wide margin.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .ring import Polynomial, PolyRing


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    M = M.copy() % p
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = M[r] * inv % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def reduce_rows(V: np.ndarray, basis: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Rows of V modulo the row space of an rref ``basis``."""
    if not pivots or V.shape[0] == 0:
        return V % p
    return (V - (V[:, pivots] @ basis) % p) % p


class DegreePiece:
    """Column indexing for the degree-d monomials of a ring."""

    def __init__(self, ring: PolyRing, d: int):
        self.ring = ring
        self.d = d
        self.monos = [ring.encode(e) for e in ring.monomials_of_degree(d)]
        self.index = {m: i for i, m in enumerate(self.monos)}

    def __len__(self):
        return len(self.monos)

    def vector(self, terms: dict) -> np.ndarray:
        v = np.zeros(len(self.monos), dtype=np.int64)
        for m, c in terms.items():
            v[self.index[m]] = c
        return v

    def polynomial(self, v: np.ndarray) -> Polynomial:
        nz = np.nonzero(v)[0]
        return Polynomial(self.ring, {self.monos[i]: int(v[i]) for i in nz})

    def span_rows(self, gens: Sequence[Polynomial]) -> np.ndarray:
        """All g * monomial landing in degree d, one row each."""
        ring = self.ring
        out = []
        for g in gens:
            k = self.d - g.degree()
            if k < 0:
                continue
            for e in ring.monomials_of_degree(k):
                s = ring.encode(e)
                out.append({m + s: c for m, c in g._t.items()})
        mat = np.zeros((len(out), len(self.monos)), dtype=np.int64)
        for i, t in enumerate(out):
            for m, c in t.items():
                mat[i, self.index[m]] = c
        return mat


def graded_contains(small: Sequence[Polynomial], big: Sequence[Polynomial], ring: PolyRing) -> bool:
    """Is every (homogeneous) element of ``small`` in the ideal generated by ``big``?

    Checked degree by degree: f lies in (big) iff f lies in its degree-deg(f)
    piece, the span of generator-times-monomial products.
    """
    p = ring.p
    by_deg: dict[int, list[Polynomial]] = {}
    for f in small:
        if f:
            by_deg.setdefault(f.degree(), []).append(f)
    for d, fs in by_deg.items():
        piece = DegreePiece(ring, d)
        span = piece.span_rows(big)
        if span.shape[0] == 0:
            return False
        basis, piv = rref(span, p)
        V = np.array([piece.vector(f._t) for f in fs], dtype=np.int64)
        if reduce_rows(V, basis, piv, p).any():
            return False
    return True


def graded_intersection(A: Sequence[Polynomial], B: Sequence[Polynomial], ring: PolyRing,
                        lo: int, hi: int) -> list[Polynomial]:
    """Generators of (A) ∩ (B) in degrees lo..hi, new modulo lower-degree ones.

    (A ∩ B)_d = kernel of B_d -> R_d / A_d.  Row reducing [B_d mod A_d | B_d]
    leaves kernel vectors in the rows whose left block vanished.
    """
    p = ring.p
    found: list[Polynomial] = []
    for d in range(lo, hi + 1):
        piece = DegreePiece(ring, d)
        SB = piece.span_rows(B)
        if SB.shape[0] == 0:
            continue
        SA = piece.span_rows(A)
        if SA.shape[0]:
            Abasis, Apiv = rref(SA, p)
            N = reduce_rows(SB, Abasis, Apiv, p)
        else:
            N = SB % p
        aug, piv = rref(np.hstack([N, SB]), p)
        n = len(piece)
        kernel = aug[[i for i, c in enumerate(piv) if c >= n]][:, n:]
        if kernel.shape[0] == 0:
            continue
        have = piece.span_rows(found)
        if have.shape[0]:
            Hbasis, Hpiv = rref(have, p)
            kernel = reduce_rows(kernel, Hbasis, Hpiv, p)
        new, _ = rref(kernel, p)
        found.extend(piece.polynomial(v) for v in new)
    return found
