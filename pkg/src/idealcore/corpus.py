"""Worked-example fixtures: parsing, printing and running them.

A fixture is a text file of ``key: value`` lines.  Keys:

    name, description, ring, field, seed, note (repeatable)
    ideal: comma-separated generators, or an ideal expression such as (x,y,z)^2
    ideal-from: pfaffians <size>       (instead of ideal; needs matrix)
    matrix: rows separated by ';', entries by ','
    reduction <label>: generators
    element <label>: polynomial
    ci: generators of a regular sequence   power: j
    min-samples, stabilization, balance-samples, gamma-trials: integers
    expect <quantity> [args]: <value> | <citation>

Ideal expressions use ``m`` (all variables), ``I`` (the fixture ideal),
``core`` (the core found by an earlier check), parenthesised generator
lists, ``*``, ``+`` and ``^``.
"""

from __future__ import annotations

import os
import re
import time
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

from .core import (balancedness_check, core_ci_power, core_conjecture, core_formula,
                   core_montecarlo, gamma_upper_estimate, integral_closure_member)
from .ideal import Ideal, height, maximal_ideal
from .matrix import PolyMatrix, g_s_check, minor_ideal, pfaffian_ideal
from .reductions import (SamplerConfig, analytic_spread, minimal_generator_count,
                         reduction_number, sample_minimal_reduction)
from .ring import FieldSpec, PolyRing, parse_poly_list

ENV_VAR = "IDEALCORE_FIXTURES"
SUFFIX = ".fixture"

_SCALAR_KEYS = ("name", "description", "ring", "field", "seed", "ideal", "ideal-from",
                "matrix", "ci", "power", "min-samples", "stabilization",
                "balance-samples", "gamma-trials")
_INT_KEYS = ("seed", "power", "min-samples", "stabilization", "balance-samples", "gamma-trials")


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class Expectation:
    quantity: str
    args: tuple[str, ...]
    value: str
    citation: str

    @property
    def label(self) -> str:
        return " ".join((self.quantity, *self.args))


@dataclass
class Fixture:
    name: str
    description: str = ""
    ring: str = ""
    field: str = "GF:32003"
    seed: int = 0
    ideal: str = ""
    ideal_from: str = ""
    matrix: str = ""
    ci: str = ""
    power: int | None = None
    min_samples: int | None = None
    stabilization: int | None = None
    balance_samples: int | None = None
    gamma_trials: int | None = None
    reductions: dict[str, str] = dc_field(default_factory=dict)
    elements: dict[str, str] = dc_field(default_factory=dict)
    notes: list[str] = dc_field(default_factory=list)
    expect: list[Expectation] = dc_field(default_factory=list)

    # construction ------------------------------------------------------------
    def build_ring(self) -> PolyRing:
        return PolyRing(self.ring, FieldSpec.parse(self.field))

    def build_matrix(self, ring: PolyRing) -> PolyMatrix | None:
        return PolyMatrix.parse(self.matrix, ring) if self.matrix else None

    def build_ideal(self, ring: PolyRing) -> Ideal:
        if self.ideal:
            return parse_ideal_expr(self.ideal, ring)
        if self.ideal_from:
            kind, _, size = self.ideal_from.partition(" ")
            M = self.build_matrix(ring)
            if kind != "pfaffians" or M is None:
                raise FixtureError(f"{self.name}: ideal-from needs 'pfaffians <size>' and a matrix")
            return pfaffian_ideal(M, int(size))
        if self.ci and self.power:
            return Ideal(ring, parse_poly_list(self.ci, ring)) ** self.power
        raise FixtureError(f"{self.name}: no ideal given")

    def validate(self):
        """Parse every polynomial, matrix and expected ideal against the ring."""
        ring = self.build_ring()
        self.build_ideal(ring)
        self.build_matrix(ring)
        for text in self.reductions.values():
            parse_poly_list(text, ring)
        for text in self.elements.values():
            ring.parse(text)
        if self.ci:
            parse_poly_list(self.ci, ring)
        for e in self.expect:
            if e.quantity not in CHECKS:
                raise FixtureError(f"{self.name}: unknown quantity {e.quantity!r}")

    # text form ---------------------------------------------------------------
    def dump(self) -> str:
        lines = []
        for key in _SCALAR_KEYS:
            val = getattr(self, key.replace("-", "_"))
            if val in ("", None) or (key == "field" and not val):
                continue
            lines.append(f"{key}: {val}")
        lines += [f"note: {n}" for n in self.notes]
        lines += [f"reduction {k}: {v}" for k, v in self.reductions.items()]
        lines += [f"element {k}: {v}" for k, v in self.elements.items()]
        lines += [f"expect {e.label}: {e.value} | {e.citation}" for e in self.expect]
        return "\n".join(lines) + "\n"


def parse_fixture(text: str) -> Fixture:
    data: dict = {"reductions": {}, "elements": {}, "notes": [], "expect": []}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise FixtureError(f"line {lineno}: expected 'key: value'")
        head, *rest = key.split()
        value = value.strip()
        if head == "note":
            data["notes"].append(value)
        elif head in ("reduction", "element"):
            if len(rest) != 1:
                raise FixtureError(f"line {lineno}: {head} needs exactly one label")
            data[head + "s"][rest[0]] = value
        elif head == "expect":
            if not rest:
                raise FixtureError(f"line {lineno}: expect needs a quantity")
            val, bar, cite = value.partition("|")
            if not bar or not cite.strip():
                raise FixtureError(f"line {lineno}: expected value needs a '| citation'")
            data["expect"].append(Expectation(rest[0], tuple(rest[1:]), val.strip(), cite.strip()))
        elif head in _SCALAR_KEYS and not rest:
            attr = head.replace("-", "_")
            if attr in data:
                raise FixtureError(f"line {lineno}: duplicate key {head!r}")
            data[attr] = int(value) if head in _INT_KEYS else value
        else:
            raise FixtureError(f"line {lineno}: unknown key {key!r}")
    if "name" not in data:
        raise FixtureError("fixture has no name")
    return Fixture(**data)


# ideal expressions -------------------------------------------------------------

def parse_ideal_expr(text: str, ring: PolyRing, env: dict[str, Ideal] | None = None) -> Ideal:
    """Evaluate ``m``, ``I``, ``core``, ``(gens)`` with ``+``, ``*`` and ``^``.

    A bare comma-separated list without parentheses is a generator list.
    """
    env = dict(env or {})
    env.setdefault("m", maximal_ideal(ring))
    src = text.strip()
    if _is_plain_list(src, env):
        return Ideal(ring, parse_poly_list(src, ring))
    pos = 0

    def peek():
        nonlocal pos
        while pos < len(src) and src[pos].isspace():
            pos += 1
        return src[pos] if pos < len(src) else ""

    def expr():
        nonlocal pos
        out = term()
        while peek() == "+":
            pos += 1
            out = out + term()
        return out

    def term():
        nonlocal pos
        out = factor()
        while peek() == "*":
            pos += 1
            out = out * factor()
        return out

    def factor():
        nonlocal pos
        base = atom()
        if peek() == "^":
            pos += 1
            m = re.compile(r"\s*(\d+)").match(src, pos)
            if not m:
                raise FixtureError(f"exponent expected in {text!r}")
            pos = m.end()
            base = base ** int(m.group(1))
        return base

    def atom():
        nonlocal pos
        c = peek()
        if c == "(":
            depth, j = 0, pos
            while j < len(src):
                depth += {"(": 1, ")": -1}.get(src[j], 0)
                if depth == 0:
                    break
                j += 1
            if depth:
                raise FixtureError(f"unbalanced parentheses in {text!r}")
            inner = src[pos + 1:j]
            pos = j + 1
            return Ideal(ring, parse_poly_list(inner, ring))
        m = re.compile(r"[A-Za-z_]\w*").match(src, pos)
        if not m or m.group(0) not in env:
            raise FixtureError(f"unknown ideal name at {src[pos:]!r}")
        pos = m.end()
        return env[m.group(0)]

    result = expr()
    if peek():
        raise FixtureError(f"trailing input {src[pos:]!r} in ideal expression")
    return result


def _is_plain_list(src: str, env: dict) -> bool:
    if src.startswith("("):
        return False
    m = re.match(r"[A-Za-z_]\w*", src)
    return not (m and m.group(0) in env)


# running -------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckOutcome:
    label: str
    expected: str
    actual: str
    passed: bool
    citation: str
    seconds: float


@dataclass
class FixtureReport:
    name: str
    checks: list[CheckOutcome]
    notes: list[str]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class _Context:
    def __init__(self, fx: Fixture):
        self.fx = fx
        self.ring = fx.build_ring()
        self.I = fx.build_ideal(self.ring)
        self.M = fx.build_matrix(self.ring)
        self.cfg = SamplerConfig(seed=fx.seed)
        self.core: Ideal | None = None
        self._ell: int | None = None

    @property
    def ell(self) -> int:
        if self._ell is None:
            self._ell = analytic_spread(self.I)
        return self._ell

    def reduction(self, label: str) -> Ideal:
        if label == "random":
            J, _ = sample_minimal_reduction(self.I, self.ell, self.cfg, index="fixture")
            return J
        if label not in self.fx.reductions:
            raise FixtureError(f"{self.fx.name}: no reduction labelled {label!r}")
        return Ideal(self.ring, parse_poly_list(self.fx.reductions[label], self.ring))

    def element(self, label: str):
        if label not in self.fx.elements:
            raise FixtureError(f"{self.fx.name}: no element labelled {label!r}")
        return self.ring.parse(self.fx.elements[label])

    def expected_ideal(self, text: str) -> Ideal:
        env = {"I": self.I}
        if self.core is not None:
            env["core"] = self.core
        return parse_ideal_expr(text, self.ring, env)

    def need_core(self) -> Ideal:
        if self.core is None:
            raise FixtureError(f"{self.fx.name}: a core check must come before this one")
        return self.core


def _ideal_check(ctx: _Context, found: Ideal, e: Expectation, ok: bool = True):
    want = ctx.expected_ideal(e.value)
    return ok and found == want, _show(found)


def _show(I: Ideal) -> str:
    gens = I.minimal_generators().gens if I.is_homogeneous() else I.gens
    return "(" + ", ".join(map(str, gens)) + ")"


def _chk_core_formula(ctx, e):
    res = core_formula(ctx.I, ctx.reduction(e.args[0]))
    ctx.core = res.core
    ok, shown = _ideal_check(ctx, res.core, e, res.consistent)
    return ok, shown + ("" if res.consistent else "  [(J:I)J differs]")


def _chk_core_conjecture(ctx, e):
    res = core_conjecture(ctx.I, ctx.reduction(e.args[0]))
    ctx.core = ctx.core or res.core
    ok, shown = _ideal_check(ctx, res.core, e, res.consistent)
    return ok, f"{shown} r={res.witnesses['r']} three-way={'agree' if res.consistent else 'DISAGREE'}"


def _chk_core_montecarlo(ctx, e):
    fx = ctx.fx
    res = core_montecarlo(ctx.I, ctx.cfg, fx.stabilization or 5, min_samples=fx.min_samples or 1,
                          ell=ctx.ell)
    ctx.core = ctx.core or res.core
    ok, shown = _ideal_check(ctx, res.core, e)
    return ok, f"{shown} samples={res.witnesses['samples']} seed={fx.seed}"


def _chk_core_oracle(ctx, e):
    fx = ctx.fx
    gens = parse_poly_list(fx.ci, ctx.ring)
    res = core_ci_power(gens, len(gens), fx.power)
    ctx.core = ctx.core or res.core
    return _ideal_check(ctx, res.core, e)


def _chk_int(value_fn):
    def run(ctx, e):
        got = value_fn(ctx, e)
        return got == int(e.value), str(got)
    return run


def _chk_bool(value_fn):
    def run(ctx, e):
        got = bool(value_fn(ctx, e))
        want = {"true": True, "false": False}[e.value.lower()]
        return got == want, str(got).lower()
    return run


def _chk_minors(ctx, e):
    if ctx.M is None:
        raise FixtureError(f"{ctx.fx.name}: minors need a matrix")
    return _ideal_check(ctx, minor_ideal(ctx.M, int(e.args[0])), e)


def _chk_gs(ctx, e):
    if ctx.M is None:
        raise FixtureError(f"{ctx.fx.name}: gs-check needs a matrix")
    return g_s_check(ctx.I, ctx.M, int(e.args[0])).holds


def _chk_gamma(ctx, e):
    core = ctx.need_core()
    return gamma_upper_estimate(ctx.I, ctx.fx.gamma_trials or 20, ctx.cfg, core, ell=ctx.ell)


def _chk_icl(ctx, e):
    v = integral_closure_member(ctx.element(e.args[0]), ctx.need_core())
    return v.verdict == e.value, v.verdict


CHECKS = {
    "analytic-spread": _chk_int(lambda ctx, e: ctx.ell),
    "height": _chk_int(lambda ctx, e: height(ctx.I)),
    "mu": _chk_int(lambda ctx, e: minimal_generator_count(ctx.I)),
    "reduction-number": _chk_int(lambda ctx, e: reduction_number(ctx.reduction(e.args[0]), ctx.I)),
    "gamma-estimate": _chk_int(_chk_gamma),
    "core-formula": _chk_core_formula,
    "core-conjecture": _chk_core_conjecture,
    "core-montecarlo": _chk_core_montecarlo,
    "core-oracle": _chk_core_oracle,
    "minors": _chk_minors,
    "gs-check": _chk_bool(_chk_gs),
    "balanced": _chk_bool(lambda ctx, e: balancedness_check(
        ctx.I, ctx.fx.balance_samples or 4, ctx.cfg, ell=ctx.ell).balanced),
    "member": _chk_bool(lambda ctx, e: ctx.need_core().contains(ctx.element(e.args[0]))),
    "icl-member": _chk_icl,
}


# lookup ---------------------------------------------------------------------------

def fixtures_dir(override: str | os.PathLike | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("idealcore") / "fixtures"))


def _paths(directory: Path) -> dict[str, Path]:
    if not directory.is_dir():
        raise FixtureError(f"fixture directory {directory} does not exist")
    return {p.stem: p for p in sorted(directory.glob("*" + SUFFIX))}


def load_fixture(name: str, directory: str | os.PathLike | None = None) -> Fixture:
    paths = _paths(fixtures_dir(directory))
    if name not in paths:
        raise FixtureError(f"unknown fixture {name!r}; known: {', '.join(paths)}")
    fx = parse_fixture(paths[name].read_text())
    if fx.name != name:
        raise FixtureError(f"{paths[name]} declares name {fx.name!r}")
    return fx


def list_fixtures(filter: str = "", directory: str | os.PathLike | None = None) -> list[tuple[str, str]]:
    """(name, description) pairs sorted by name, optionally filtered by substring."""
    out = []
    for name, path in _paths(fixtures_dir(directory)).items():
        if filter and filter not in name:
            continue
        out.append((name, parse_fixture(path.read_text()).description))
    return out


def run_fixture(name: str | Fixture, directory: str | os.PathLike | None = None) -> FixtureReport:
    fx = name if isinstance(name, Fixture) else load_fixture(name, directory)
    fx.validate()
    ctx = _Context(fx)
    checks = []
    for e in fx.expect:
        t0 = time.perf_counter()
        ok, shown = CHECKS[e.quantity](ctx, e)
        checks.append(CheckOutcome(e.label, e.value, shown, ok, e.citation,
                                   time.perf_counter() - t0))
    return FixtureReport(fx.name, checks, list(fx.notes))
