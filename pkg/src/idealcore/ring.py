"""Coefficient fields, term orders and sparse multivariate polynomials.

A monomial is stored as a single Python ``int``.  The high bits hold an
order key (a mixed-radix packing of the term order's weight rows) and the
low bits hold the raw exponent vector, one 16-bit field per variable.  Both
parts are linear in the exponent vector, which buys three things:

* comparing monomials under the ring's order is ``<`` on ints,
* multiplying monomials is ``+`` on ints,
* ``a`` divides ``b`` iff ``((b & EMASK) - (a & EMASK)) & GUARD == 0``.

The top bit of every exponent field is a guard bit; an exponent that reaches
it is an overflow and raises instead of wrapping.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

EXP_BITS = 16
MAX_EXP = (1 << (EXP_BITS - 1)) - 1
KEY_BITS = EXP_BITS + 8

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``characteristic == 0``) or GF(p) for an odd prime p."""

    characteristic: int = DEFAULT_PRIME

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p <= 2 or not _is_prime(p)):
            raise ValueError(f"prime field modulus must be a prime > 2, got {p}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(0)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> FieldSpec:
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Accepts ``QQ``, ``GF:p`` and ``GF(p)``."""
        t = text.strip()
        if t.upper() in ("QQ", "Q"):
            return cls.rationals()
        m = re.fullmatch(r"(?i)GF(?::|\()\s*(\d+)\s*\)?", t)
        if not m:
            raise ValueError(f"unknown field {text!r}; expected QQ or GF:p")
        return cls(int(m.group(1)))

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __call__(self, value) -> int | Fraction:
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                if value.denominator % p == 0:
                    raise ZeroDivisionError(f"{value} is not representable in GF({p})")
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        return Fraction(value)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(a, -1, p) if p else 1 / Fraction(a)

    def signed(self, a):
        """Representative used for printing: symmetric residue in GF(p)."""
        p = self.characteristic
        if p:
            return a - p if a > p // 2 else a
        return a

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


@dataclass(frozen=True)
class TermOrder:
    """Monomial order: ``grevlex``, ``lex`` or a two-block product order.

    For ``block`` the first ``elim_count`` variables are compared by ``outer``
    and only ties are broken on the remaining variables by ``inner``.
    """

    kind: str = "grevlex"
    elim_count: int = 0
    outer: TermOrder | None = None
    inner: TermOrder | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "block":
            if self.elim_count < 1:
                raise ValueError("block order needs elim_count >= 1")
            if self.outer is None:
                object.__setattr__(self, "outer", GREVLEX)
            if self.inner is None:
                object.__setattr__(self, "inner", GREVLEX)

    @classmethod
    def block(cls, elim_count: int, outer: TermOrder | None = None,
              inner: TermOrder | None = None) -> TermOrder:
        return cls("block", elim_count, outer, inner)

    def rows(self, n: int) -> list[tuple[int, ...]]:
        """Weight matrix whose row-wise lexicographic comparison is this order."""
        if self.kind == "lex":
            return [tuple(int(i == k) for i in range(n)) for k in range(n)]
        if self.kind == "grevlex":
            if n == 0:
                return []
            rows = [(1,) * n]
            for k in range(n - 1, 0, -1):
                rows.append(tuple(-int(i == k) for i in range(n)))
            return rows
        k = self.elim_count
        if k >= n:
            raise ValueError(f"block order eliminates {k} of only {n} variables")
        top = [r + (0,) * (n - k) for r in self.outer.rows(k)]
        bottom = [(0,) * k + r for r in self.inner.rows(n - k)]
        return top + bottom

    def compare(self, e1: Sequence[int], e2: Sequence[int]) -> int:
        if len(e1) != len(e2):
            raise ValueError("exponent vectors of different length")
        for row in self.rows(len(e1)):
            a = sum(w * x for w, x in zip(row, e1))
            b = sum(w * x for w, x in zip(row, e2))
            if a != b:
                return 1 if a > b else -1
        return 0

    def __str__(self) -> str:
        if self.kind == "block":
            return f"block({self.elim_count},{self.outer},{self.inner})"
        return self.kind


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


def term_compare(e1: Sequence[int], e2: Sequence[int], order: TermOrder = GREVLEX) -> int:
    """-1, 0 or 1 according as e1 <, =, > e2 in ``order``."""
    return order.compare(e1, e2)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolyRing:
    """k[x_1, ..., x_n] with a fixed term order.  Immutable."""

    def __init__(self, variables: str | Iterable[str], field: FieldSpec | None = None,
                 order: TermOrder | None = None):
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        variables = tuple(variables)
        if not variables:
            raise ValueError("a polynomial ring needs at least one variable")
        for v in variables:
            if not _NAME.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        self.variables = variables
        self.field = field if field is not None else FieldSpec()
        self.order = order if order is not None else GREVLEX
        self.nvars = n = len(variables)
        self.p = self.field.characteristic

        rows = self.order.rows(n)
        self._shift = n * EXP_BITS
        self.emask = (1 << self._shift) - 1
        self.guard = sum(1 << (i * EXP_BITS + EXP_BITS - 1) for i in range(n))
        nrows = len(rows)
        units = []
        for i in range(n):
            key = 0
            for k, row in enumerate(rows):
                key += row[i] << (KEY_BITS * (nrows - 1 - k))
            units.append((key << self._shift) + (1 << (i * EXP_BITS)))
        self._units = tuple(units)
        self._index = {v: i for i, v in enumerate(variables)}
        self._decoded: dict[int, tuple[int, ...]] = {}

    # identity -------------------------------------------------------------
    def _ident(self):
        return (self.variables, self.field, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        return f"PolyRing({','.join(self.variables)}; {self.field}; {self.order})"

    def with_order(self, order: TermOrder) -> PolyRing:
        if order == self.order:
            return self
        return PolyRing(self.variables, self.field, order)

    def with_variables(self, variables: Iterable[str], order: TermOrder | None = None) -> PolyRing:
        return PolyRing(tuple(variables), self.field, order or GREVLEX)

    def fresh_name(self, base: str = "t") -> str:
        name, k = base, 0
        while name in self._index:
            k += 1
            name = f"{base}{k}"
        return name

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    # monomial codec -------------------------------------------------------
    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent vector length does not match ring")
        m = 0
        for e, u in zip(exps, self._units):
            if e:
                if e < 0:
                    raise ValueError("negative exponent")
                if e > MAX_EXP:
                    raise OverflowError(f"exponent {e} exceeds {MAX_EXP}")
                m += e * u
        return m

    def decode(self, m: int) -> tuple[int, ...]:
        exps = self._decoded.get(m)
        if exps is None:
            raw = m & self.emask
            f = (1 << EXP_BITS) - 1
            exps = tuple((raw >> (i * EXP_BITS)) & f for i in range(self.nvars))
            self._decoded[m] = exps
        return exps

    def mdegree(self, m: int) -> int:
        return sum(self.decode(m))

    def divides(self, a: int, b: int) -> bool:
        return ((b & self.emask) - (a & self.emask)) & self.guard == 0

    def mlcm(self, a: int, b: int) -> int:
        return self.encode([max(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    # element construction -------------------------------------------------
    def from_dict(self, terms: dict[int, object]) -> Polynomial:
        """Build from an already encoded ``{monomial: coeff}`` map (zeros dropped)."""
        norm = self.field
        out = {}
        for m, c in terms.items():
            c = norm(c)
            if c:
                out[m] = c
        return Polynomial(self, out)

    def from_terms(self, terms: Iterable[tuple[Sequence[int], object]]) -> Polynomial:
        acc: dict[int, object] = {}
        for exps, c in terms:
            m = self.encode(exps)
            acc[m] = acc.get(m, 0) + c
        return self.from_dict(acc)

    def const(self, c) -> Polynomial:
        return self.from_dict({0: c})

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.const(1)

    def gen(self, name_or_index: str | int) -> Polynomial:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Polynomial(self, {self._units[i]: self.field(1)})

    @property
    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps: Sequence[int]) -> Polynomial:
        return Polynomial(self, {self.encode(exps): self.field(1)})

    def parse(self, text: str) -> Polynomial:
        return parse_poly(text, self)

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            return value.to_ring(self)
        if isinstance(value, str):
            return parse_poly(value, self)
        return self.const(value)

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        """All exponent vectors of total degree d, descending in the ring order."""
        out: list[tuple[int, ...]] = []

        def rec(i, left, acc):
            if i == self.nvars - 1:
                out.append(tuple(acc + [left]))
                return
            for e in range(left, -1, -1):
                rec(i + 1, left - e, acc + [e])

        if d >= 0:
            rec(0, d, [])
        out.sort(key=self.encode, reverse=True)
        return out


class Polynomial:
    """Immutable sparse polynomial; ``_t`` maps encoded monomials to nonzero coefficients."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: PolyRing, terms: dict[int, object]):
        self.ring = ring
        self._t = terms
        self._hash = None

    # inspection -----------------------------------------------------------
    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self):
        return len(self._t)

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """(exponents, coefficient) pairs in descending term order."""
        dec = self.ring.decode
        return [(dec(m), self._t[m]) for m in sorted(self._t, reverse=True)]

    def monomials(self) -> list[tuple[int, ...]]:
        return [e for e, _ in self.terms()]

    @property
    def lm(self) -> tuple[int, ...]:
        if not self._t:
            raise ValueError("zero polynomial has no leading monomial")
        return self.ring.decode(max(self._t))

    @property
    def lc(self):
        if not self._t:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._t[max(self._t)]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._t:
            return -1
        return max(self.ring.mdegree(m) for m in self._t)

    def weighted_degrees(self, weights: Sequence[int] | None = None) -> set[int]:
        dec = self.ring.decode
        if weights is None:
            return {sum(dec(m)) for m in self._t}
        return {sum(w * e for w, e in zip(weights, dec(m))) for m in self._t}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        return len(self.weighted_degrees(weights)) <= 1

    def is_constant(self) -> bool:
        return all(m == 0 for m in self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def variables_used(self) -> set[int]:
        used = set()
        for m in self._t:
            used.update(i for i, e in enumerate(self.ring.decode(m)) if e)
        return used

    # ring plumbing --------------------------------------------------------
    def _check(self, other: Polynomial):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def to_ring(self, ring: PolyRing) -> Polynomial:
        """Re-express in ``ring`` by matching variable names."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise ValueError("cannot move a polynomial between different fields")
        idx = []
        for i, v in enumerate(self.ring.variables):
            idx.append(ring._index.get(v))
        out = {}
        for m, c in self._t.items():
            exps = self.ring.decode(m)
            target = [0] * ring.nvars
            for i, e in enumerate(exps):
                if e:
                    j = idx[i]
                    if j is None:
                        raise ValueError(
                            f"variable {self.ring.variables[i]!r} missing from target ring")
                    target[j] = e
            out[ring.encode(target)] = c
        return Polynomial(ring, out)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.ring.p
        out = dict(self._t)
        for m, c in other._t.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: (p - c if p else -c) for m, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero
            p = self.ring.p
            return Polynomial(self.ring, {m: (v * c % p if p else v * c)
                                          for m, v in self._t.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Polynomial(self.ring, _mul_terms(self.ring, self._t, other._t))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self) -> Polynomial:
        if not self._t:
            return self
        return self * self.ring.field.inv(self.lc)

    def mul_monomial(self, exps: Sequence[int], c=1) -> Polynomial:
        shift = self.ring.encode(exps)
        return Polynomial(self.ring, {m + shift: v for m, v in self._t.items()}) * c

    def diff(self, var: str | int) -> Polynomial:
        i = var if isinstance(var, int) else self.ring.index(var)
        unit = self.ring._units[i]
        out = {}
        for m, c in self._t.items():
            e = self.ring.decode(m)[i]
            if e:
                out[m - unit] = e * c
        return self.ring.from_dict(out)

    def evaluate(self, point: Sequence[object]):
        """Value at a point given as one field element per variable."""
        f = self.ring.field
        total = f(0)
        for m, c in self._t.items():
            v = c
            for x, e in zip(point, self.ring.decode(m)):
                if e:
                    v = v * f(x) ** e
            total = total + v
        return f(total)

    def exact_div(self, divisor: Polynomial) -> Polynomial:
        """Quotient q with self == q * divisor; raises ArithmeticError otherwise."""
        self._check(divisor)
        if not divisor._t:
            raise ZeroDivisionError("division by the zero polynomial")
        ring, p = self.ring, self.ring.p
        lm_d = max(divisor._t)
        inv = ring.field.inv(divisor._t[lm_d])
        tail = [(m - lm_d, c) for m, c in divisor._t.items() if m != lm_d]
        rest = dict(self._t)
        quot = {}
        while rest:
            m = max(rest)
            if not ring.divides(lm_d, m):
                raise ArithmeticError("polynomial division is not exact")
            c = rest.pop(m)
            q = c * inv % p if p else c * inv
            shift = m - lm_d
            quot[shift] = q
            for dm, dc in tail:
                nm = dm + m
                v = rest.get(nm, 0)
                v = (v - q * dc) % p if p else v - q * dc
                if v:
                    rest[nm] = v
                else:
                    rest.pop(nm, None)
        return Polynomial(ring, quot)

    # comparison / printing ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _mul_terms(ring: PolyRing, a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    p = ring.p
    out: dict[int, object] = {}
    get = out.get
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = ma + mb
            out[m] = get(m, 0) + ca * cb
    guard = ring.guard
    res = {}
    for m, c in out.items():
        if p:
            c %= p
        if c:
            if m & guard:
                raise OverflowError(f"exponent overflow (max {MAX_EXP}) in product")
            res[m] = c
    return res


def format_coeff(field: FieldSpec, c) -> str:
    c = field.signed(c)
    if isinstance(c, Fraction) and c.denominator == 1:
        c = c.numerator
    return str(c)


def format_poly(f: Polynomial) -> str:
    if not f._t:
        return "0"
    ring = f.ring
    parts = []
    for exps, c in f.terms():
        mono = "*".join(
            v if e == 1 else f"{v}^{e}"
            for v, e in zip(ring.variables, exps) if e)
        cs = format_coeff(ring.field, c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


# parsing ------------------------------------------------------------------

class PolySyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg):
        raise PolySyntaxError(f"{msg} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.toks:
            self.fail("empty polynomial")
        f = self.expr()
        if self.i != len(self.toks):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self):
        f = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            g = self.unary()
            if op == "*":
                f = f * g
            else:
                if not g.is_constant() or g.is_zero():
                    self.fail("division is only allowed by a nonzero constant")
                f = f * self.ring.field.inv(g._t[0])
        return f

    def unary(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            f = self.unary()
            return -f if val == "-" else f
        return self.power()

    def power(self):
        f = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                self.fail("exponent must be a non-negative integer literal")
            e = int(val)
            if e > MAX_EXP:
                raise OverflowError(f"exponent {e} exceeds {MAX_EXP}")
            f = f ** e
        return f

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring._index:
                raise ValueError(f"unknown variable {val!r} in {self.text!r}")
            return self.ring.gen(val)
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return f
        self.fail("unexpected end of input" if kind is None else f"unexpected token {val!r}")


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse integers, ring variables, ``+ - * ^`` and parentheses.

    ``/`` is accepted only with a constant divisor so that rational
    coefficients print and re-parse.
    """
    try:
        return _Parser(text, ring).parse()
    except ZeroDivisionError as exc:
        raise ValueError(f"coefficient not representable in {ring.field}: {text!r}") from exc


def parse_poly_list(text: str, ring: PolyRing) -> list[Polynomial]:
    """Comma separated polynomials (commas inside parentheses are not separators)."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    parts = [s for s in (p.strip() for p in parts) if s]
    return [parse_poly(s, ring) for s in parts]
