"""Polynomial matrices: determinants, minor ideals, Pfaffians and the G_s test."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .ideal import Ideal, height_report
from .ring import Polynomial, PolyRing, parse_poly_list

LAPLACE_LIMIT = 8


class PolyMatrix:
    """Rectangular matrix of polynomials over one ring.  Immutable."""

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence[Polynomial | str | int]]):
        grid = []
        for row in rows:
            out = []
            for e in row:
                if isinstance(e, Polynomial):
                    if e.ring != ring:
                        raise ValueError(f"entry {e} is not in {ring!r}")
                    out.append(e)
                else:
                    out.append(ring(e))
            grid.append(tuple(out))
        if not grid or not grid[0]:
            raise ValueError("matrix must have at least one row and one column")
        if any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("matrix rows have different lengths")
        self.ring = ring
        self.entries: tuple[tuple[Polynomial, ...], ...] = tuple(grid)
        self.nrows = len(grid)
        self.ncols = len(grid[0])
        self._det_memo: dict = {}

    @classmethod
    def parse(cls, text: str, ring: PolyRing) -> PolyMatrix:
        """Rows separated by ``;``, entries by ``,``."""
        rows = [r for r in text.split(";") if r.strip()]
        return cls(ring, [parse_poly_list(r, ring) for r in rows])

    def __str__(self):
        return "; ".join(", ".join(map(str, row)) for row in self.entries)

    def __repr__(self):
        return f"PolyMatrix({self})"

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(self.ring, list(zip(*self.entries)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows])

    def add_row_multiple(self, target: int, source: int, factor: Polynomial | int) -> PolyMatrix:
        """Row operation: row[target] += factor * row[source]."""
        rows = [list(r) for r in self.entries]
        rows[target] = [a + b * factor for a, b in zip(rows[target], rows[source])]
        return PolyMatrix(self.ring, rows)

    def is_alternating(self) -> bool:
        if self.nrows != self.ncols:
            return False
        n = self.nrows
        for i in range(n):
            if self.entries[i][i]:
                return False
            for j in range(i + 1, n):
                if self.entries[i][j] != -self.entries[j][i]:
                    return False
        return True

    # determinants ------------------------------------------------------------
    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) != len(cols):
            raise ValueError("minor needs as many rows as columns")
        if len(rows) > LAPLACE_LIMIT:
            return det_bareiss(self.submatrix(rows, cols))
        return self._laplace(rows, cols)

    def _laplace(self, rows: tuple, cols: tuple) -> Polynomial:
        if not rows:
            return self.ring.one
        key = (rows, cols)
        hit = self._det_memo.get(key)
        if hit is not None:
            return hit
        first = self.entries[rows[0]]
        total = self.ring.zero
        for k, c in enumerate(cols):
            a = first[c]
            if not a:
                continue
            sub = self._laplace(rows[1:], cols[:k] + cols[k + 1:])
            total = total + a * sub if k % 2 == 0 else total - a * sub
        self._det_memo[key] = total
        return total

    def det(self) -> Polynomial:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return self.minor(range(self.nrows), range(self.ncols))

    def minors(self, t: int) -> list[Polynomial]:
        """All t x t minors, ordered by (row tuple, column tuple)."""
        if not 1 <= t <= min(self.nrows, self.ncols):
            raise ValueError(f"minor size {t} outside 1..{min(self.nrows, self.ncols)}")
        return [self.minor(r, c)
                for r in combinations(range(self.nrows), t)
                for c in combinations(range(self.ncols), t)]


def det_bareiss(M: PolyMatrix) -> Polynomial:
    """Fraction-free Gaussian elimination (Bareiss), exact polynomial division."""
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    a = [list(r) for r in M.entries]
    ring = M.ring
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = ring.zero
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def minor_ideal(M: PolyMatrix, t: int) -> Ideal:
    """I_t(M), the ideal of t x t minors."""
    return Ideal(M.ring, M.minors(t))


# Pfaffians -----------------------------------------------------------------

def pfaffian(M: PolyMatrix, indices: Sequence[int] | None = None,
             _memo: dict | None = None) -> Polynomial:
    """Pfaffian of the principal alternating submatrix on ``indices``.

    Expansion along the first row: Pf(A) = sum_j (-1)^(j+1) a_{1j} Pf(A_{1j}).
    """
    if indices is None:
        if not M.is_alternating():
            raise ValueError("Pfaffian needs an alternating matrix")
        indices = range(M.nrows)
    idx = tuple(indices)
    memo = {} if _memo is None else _memo
    return _pf(M, idx, memo)


def _pf(M: PolyMatrix, idx: tuple, memo: dict) -> Polynomial:
    if not idx:
        return M.ring.one
    if len(idx) % 2:
        return M.ring.zero
    hit = memo.get(idx)
    if hit is not None:
        return hit
    i = idx[0]
    total = M.ring.zero
    for k in range(1, len(idx)):
        a = M.entries[i][idx[k]]
        if not a:
            continue
        sub = _pf(M, idx[1:k] + idx[k + 1:], memo)
        total = total + a * sub if k % 2 else total - a * sub
    memo[idx] = total
    return total


def pfaffians(M: PolyMatrix, size: int) -> list[Polynomial]:
    """Pfaffians of all principal size x size submatrices, by sorted index tuple."""
    if not M.is_alternating():
        raise ValueError("Pfaffians need an alternating matrix")
    if size % 2:
        raise ValueError(f"Pfaffian size must be even, got {size}")
    if not 0 <= size <= M.nrows:
        raise ValueError(f"Pfaffian size {size} outside 0..{M.nrows}")
    memo: dict = {}
    return [_pf(M, idx, memo) for idx in combinations(range(M.nrows), size)]


def pfaffian_ideal(M: PolyMatrix, size: int) -> Ideal:
    return Ideal(M.ring, pfaffians(M, size))


def signed_submaximal_pfaffians(M: PolyMatrix) -> list[Polynomial]:
    """(-1)^i Pf(M with row/column i deleted), i = 0..n-1, for odd n.

    With these signs the vector of Pfaffians is annihilated by M, i.e. M is
    a presentation matrix of the ideal they generate.
    """
    if not M.is_alternating():
        raise ValueError("Pfaffians need an alternating matrix")
    n = M.nrows
    memo: dict = {}
    out = []
    for i in range(n):
        pf = _pf(M, tuple(j for j in range(n) if j != i), memo)
        out.append(pf if i % 2 == 0 else -pf)
    return out


# G_s -----------------------------------------------------------------------

@dataclass(frozen=True)
class GsCheck:
    i: int
    minor_size: int
    height: float   # inf when the Fitting ideal plus I is the unit ideal
    passed: bool


@dataclass(frozen=True)
class GsReport:
    holds: bool
    s: int
    checks: tuple[GsCheck, ...]

    def __bool__(self):
        return self.holds


def fitting_ideal(phi: PolyMatrix, i: int) -> Ideal:
    """Fitt_i of the module presented by phi (n rows): I_{n-i}(phi).

    Conventions: I_k = R for k <= 0 and I_k = 0 for k > min(nrows, ncols).
    """
    ring = phi.ring
    size = phi.nrows - i
    if size <= 0:
        return Ideal(ring, [ring.one])
    if size > min(phi.nrows, phi.ncols):
        return Ideal(ring, [])
    return minor_ideal(phi, size)


def g_s_check(I: Ideal, phi: PolyMatrix, s: int) -> GsReport:
    """Test condition G_s from a presentation matrix.

    mu(I_p) <= k fails exactly on V(Fitt_k(I)) = V(I_{n-k}(phi)).  Hence I
    satisfies G_s iff ht(I_{n-i}(phi) + I) > i for 1 <= i <= s-1, where
    n = nrows(phi) is the number of generators of I.
    """
    if phi.nrows != len(I.gens):
        raise ValueError(f"presentation has {phi.nrows} rows but I has {len(I.gens)} generators")
    if phi.ring != I.ring:
        raise ValueError("ring mismatch between ideal and presentation")
    checks = []
    for i in range(1, s):
        F = fitting_ideal(phi, i) + I
        if F.is_unit():
            h = float("inf")
        else:
            h = height_report(F).value
        checks.append(GsCheck(i, phi.nrows - i, h, h > i))
    return GsReport(all(c.passed for c in checks), s, tuple(checks))
