"""Command-line interface: ``idealcore <verb> [options]``.

Exit status: 0 on success or a passing check, 1 when a check comes out
false (or a bounded search gives up), 2 on usage and input errors.
"""

from __future__ import annotations

import argparse
import re
import sys
import warnings
from typing import Callable

from . import corpus
from .core import (DEFAULT_K_MAX, DEFAULT_STABILIZATION, CoreDisagreement,
                   balancedness_check, core_ci_power, core_conjecture, core_formula,
                   core_montecarlo, gamma_trials, integral_closure_member)
from .groebner import groebner_basis, normal_form
from .ideal import Ideal, height_report
from .matrix import PolyMatrix, g_s_check, minor_ideal, pfaffian_ideal
from .reductions import (DEFAULT_R_MAX, GenericityFailure, ReductionCapError, SamplerConfig,
                         analytic_spread, is_reduction, sample_minimal_reduction)
from .ring import GREVLEX, LEX, FieldSpec, PolyRing, TermOrder


class UsageError(Exception):
    pass


class Out:
    """Human or machine output; machine output reuses the input grammar."""

    def __init__(self, fmt: str, stream=None):
        self.machine = fmt == "machine"
        self.stream = stream or sys.stdout

    def _w(self, line: str):
        print(line, file=self.stream)

    def ideal(self, label: str, I: Ideal, canonical: bool = True):
        gens = _canonical(I) if canonical else I.gens
        if self.machine:
            self._w(f"{label} {len(gens)}")
            for g in gens:
                self._w(str(g))
        else:
            self._w(f"{label}: ({', '.join(map(str, gens)) or '0'})")

    def polys(self, label: str, polys):
        polys = list(polys)
        if self.machine:
            self._w(f"{label} {len(polys)}")
            for g in polys:
                self._w(str(g))
        else:
            self._w(f"{label}:")
            for g in polys:
                self._w(f"  {g}")

    def value(self, label: str, v):
        if isinstance(v, bool):
            v = str(v).lower()
        self._w(f"{label} {v}" if self.machine else f"{label}: {v}")


def _canonical(I: Ideal):
    """Deterministic generators: reduced basis, minimalized when graded."""
    red = Ideal(I.ring, I.reduced_gens())
    if I.is_homogeneous():
        gens = red.minimal_generators().gens
        return sorted(gens, key=lambda g: (g.degree(), -max(g._t)))
    return red.gens


# argument helpers --------------------------------------------------------------

def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2^64)")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _order(text: str) -> TermOrder:
    if text == "grevlex":
        return GREVLEX
    if text == "lex":
        return LEX
    if text.startswith("block:"):
        try:
            return TermOrder.block(int(text[6:]))
        except ValueError:
            pass
    raise argparse.ArgumentTypeError("order must be grevlex, lex or block:k")


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _ring(args) -> PolyRing:
    """--ring if given, else the variable names in order of first appearance."""
    names = args.ring
    if not names:
        seen: list[str] = []
        for attr in ("ideal", "ideal2", "poly", "reduction", "matrix", "core_ideal"):
            for name in _NAME.findall(getattr(args, attr, None) or ""):
                if name not in seen:
                    seen.append(name)
        if not seen:
            raise UsageError("--ring is required when the input names no variables")
        names = seen
    return PolyRing(names, args.field, getattr(args, "order", None) or GREVLEX)


def _ideal(args, ring, attr="ideal", flag="--ideal") -> Ideal:
    text = getattr(args, attr)
    if text is None:
        raise UsageError(f"{flag} is required for this verb")
    return Ideal(ring, text)


def _poly(args, ring):
    if args.poly is None:
        raise UsageError("--poly is required for this verb")
    return ring.parse(args.poly)


def _matrix(args, ring) -> PolyMatrix:
    if args.matrix is None:
        raise UsageError("--matrix is required for this verb")
    return PolyMatrix.parse(args.matrix, ring)


def _cfg(args, out: Out) -> SamplerConfig:
    out.value("seed", args.seed)
    return SamplerConfig(seed=args.seed)


# verbs ----------------------------------------------------------------------------

def v_gb(args, out):
    ring = _ring(args)
    I = _ideal(args, ring)
    gb = groebner_basis(list(I.gens) or [ring.zero], ring.order)
    out.polys("groebner-basis", [] if gb.is_zero() else gb.elements)
    return 0


def v_nf(args, out):
    ring = _ring(args)
    I = _ideal(args, ring)
    f = _poly(args, ring)
    out.value("normal-form", normal_form(f, list(I.gens) or [ring.zero], ring.order))
    return 0


def v_dim(args, out):
    ring = _ring(args)
    out.value("dimension", _ideal(args, ring).dimension())
    return 0


def _binary(op: Callable, label: str):
    def run(args, out):
        ring = _ring(args)
        out.ideal(label, op(_ideal(args, ring), _ideal(args, ring, "ideal2", "--ideal2")))
        return 0
    return run


def v_power(args, out):
    ring = _ring(args)
    out.ideal("power", _ideal(args, ring) ** args.j)
    return 0


def v_equal(args, out):
    ring = _ring(args)
    eq = _ideal(args, ring) == _ideal(args, ring, "ideal2", "--ideal2")
    out.value("equal", eq)
    return 0 if eq else 1


def v_member(args, out):
    ring = _ring(args)
    ok = _ideal(args, ring).contains(_poly(args, ring))
    out.value("member", ok)
    return 0 if ok else 1


def v_height(args, out):
    ring = _ring(args)
    rep = height_report(_ideal(args, ring), args.unmixed)
    out.value("height", rep.value)
    out.value("exact", rep.exact)
    if not out.machine:
        out.value("note", rep.note)
    return 0


def v_minors(args, out):
    ring = _ring(args)
    out.ideal("minors", minor_ideal(_matrix(args, ring), args.t))
    return 0


def v_pfaffians(args, out):
    ring = _ring(args)
    out.ideal("pfaffians", pfaffian_ideal(_matrix(args, ring), args.size), canonical=False)
    return 0


def v_gs_check(args, out):
    ring = _ring(args)
    rep = g_s_check(_ideal(args, ring), _matrix(args, ring), args.s)
    for c in rep.checks:
        h = "inf" if c.height == float("inf") else int(c.height)
        out.value(f"i={c.i} minors={c.minor_size} height", f"{h} {'pass' if c.passed else 'fail'}")
    out.value("G_s", rep.holds)
    return 0 if rep.holds else 1


def v_reduction_number(args, out):
    ring = _ring(args)
    rep = is_reduction(_ideal(args, ring, "reduction", "--reduction"), _ideal(args, ring), args.r_max)
    out.value("reduction-number", rep.r if rep.is_reduction else "unknown")
    if rep.cap_hit:
        out.value("cap-hit", f"no witness up to r = {args.r_max}")
        return 1
    return 0


def v_analytic_spread(args, out):
    ring = _ring(args)
    out.value("analytic-spread", analytic_spread(_ideal(args, ring)))
    return 0


def _ell(args, I):
    return args.ell if args.ell is not None else analytic_spread(I)


def v_sample_reduction(args, out):
    ring = _ring(args)
    I = _ideal(args, ring)
    cfg = _cfg(args, out)
    J, rep = sample_minimal_reduction(I, _ell(args, I), cfg, args.r_max)
    out.ideal("reduction", J, canonical=False)
    out.value("reduction-number", rep.r)
    return 0


def v_core(args, out):
    ring = _ring(args)
    method = args.method
    if method == "oracle":
        gens = list(_ideal(args, ring).gens)
        res = core_ci_power(gens, len(gens), args.j)
        out.ideal("core", res.core)
        return 0
    I = _ideal(args, ring)
    if method == "montecarlo":
        cfg = _cfg(args, out)
        res = core_montecarlo(I, cfg, args.stabilization, min_samples=args.min_samples,
                              ell=args.ell, r_max=args.r_max)
        out.ideal("core", res.core)
        out.value("samples", res.witnesses["samples"])
        out.value("gamma-upper", res.witnesses["gamma_upper"])
        out.value("status", res.status)
        return 0
    if args.reduction is not None:
        J = _ideal(args, ring, "reduction", "--reduction")
    else:
        cfg = _cfg(args, out)
        J, _ = sample_minimal_reduction(I, _ell(args, I), cfg, args.r_max)
        out.ideal("reduction", J, canonical=False)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", CoreDisagreement)
        res = core_formula(I, J, args.r_max) if method == "formula" else core_conjecture(I, J, args.r_max)
    out.ideal("core", res.core)
    if method == "conjecture":
        out.value("r", res.witnesses["r"])
        for name, expr in res.witnesses["expressions"].items():
            out.ideal(name, expr)
    for k, v in res.agreement.items():
        out.value(f"agree {k}", v)
    for w in caught:
        print(f"DISAGREEMENT: {w.message}", file=sys.stderr)
    return 0 if res.consistent else 1


def v_balanced(args, out):
    ring = _ring(args)
    I = _ideal(args, ring)
    cfg = _cfg(args, out)
    rep = balancedness_check(I, args.samples, cfg, ell=args.ell, r_max=args.r_max)
    out.value("balanced", rep.balanced)
    for k, K in enumerate(rep.colons):
        out.ideal(f"colon[{k}]", K)
    return 0 if rep.balanced else 1


def v_gamma_estimate(args, out):
    ring = _ring(args)
    I = _ideal(args, ring)
    core = _ideal(args, ring, "core_ideal", "--core")
    cfg = _cfg(args, out)
    counts = gamma_trials(I, args.trials, cfg, core, ell=args.ell, r_max=args.r_max)
    out.value("gamma-upper", min(counts))
    out.value("trials", " ".join(map(str, counts)))
    return 0


def v_icl_member(args, out):
    ring = _ring(args)
    v = integral_closure_member(_poly(args, ring), _ideal(args, ring), args.k_max)
    out.value("verdict", v.verdict)
    if v.member:
        out.value("r", v.r)
    return 0 if v.member else 1


def _print_report(rep: corpus.FixtureReport, out: Out):
    for c in rep.checks:
        status = "PASS" if c.passed else "FAIL"
        if out.machine:
            out._w(f"{status}\t{rep.name}\t{c.label}\t{c.actual}")
        else:
            out._w(f"[{status}] {rep.name}: {c.label} = {c.actual}  (expected {c.expected}; {c.citation})")


def v_check_example(args, out):
    rep = corpus.run_fixture(args.name, args.fixtures)
    _print_report(rep, out)
    out.value("result", "pass" if rep.passed else "fail")
    return 0 if rep.passed else 1


def v_check_all(args, out):
    ok = True
    for name, _ in corpus.list_fixtures("", args.fixtures):
        rep = corpus.run_fixture(name, args.fixtures)
        _print_report(rep, out)
        ok &= rep.passed
    out.value("result", "pass" if ok else "fail")
    return 0 if ok else 1


def v_list_fixtures(args, out):
    for name, desc in corpus.list_fixtures(args.filter, args.fixtures):
        out._w(f"{name}\t{desc}" if out.machine else f"{name:28s} {desc}")
    return 0


# parser -----------------------------------------------------------------------------

VERBS: dict[str, tuple[Callable, str, tuple[str, ...]]] = {
    "gb": (v_gb, "reduced Groebner basis (Buchberger with Gebauer-Moeller pair criteria)", ("ideal", "order")),
    "nf": (v_nf, "normal form of --poly modulo the Groebner basis of --ideal", ("ideal", "poly", "order")),
    "dim": (v_dim, "Krull dimension of R/I from a maximal independent set of leading monomials", ("ideal",)),
    "sum": (_binary(lambda a, b: a + b, "sum"), "I + J", ("ideal", "ideal2")),
    "product": (_binary(lambda a, b: a * b, "product"), "I * J", ("ideal", "ideal2")),
    "power": (v_power, "I^j", ("ideal", "j")),
    "intersect": (_binary(lambda a, b: a & b, "intersection"), "I ∩ J", ("ideal", "ideal2")),
    "colon": (_binary(lambda a, b: a.colon(b), "colon"), "I : J = {f : fJ ⊆ I}", ("ideal", "ideal2")),
    "equal": (v_equal, "ideal equality via reduced Groebner bases (exit 1 if different)", ("ideal", "ideal2")),
    "member": (v_member, "ideal membership of --poly (exit 1 if not a member)", ("ideal", "poly")),
    "height": (v_height, "height of I as numvars - dim R/I", ("ideal", "unmixed")),
    "minors": (v_minors, "ideal I_t of t x t minors of a matrix", ("matrix", "t")),
    "pfaffians": (v_pfaffians, "ideal of the size x size principal Pfaffians of an alternating matrix",
                  ("matrix", "size")),
    "gs-check": (v_gs_check, "condition G_s from a presentation matrix: ht(I_{n-i}(phi) + I) > i for i < s",
                 ("ideal", "matrix", "s")),
    "reduction-number": (v_reduction_number, "least r with I^(r+1) = J I^r", ("ideal", "reduction", "r_max")),
    "analytic-spread": (v_analytic_spread, "dimension of the special fiber ring, via the Rees ideal", ("ideal",)),
    "sample-reduction": (v_sample_reduction, "random minimal reduction of an equigenerated ideal, verified",
                         ("ideal", "ell", "r_max", "seed")),
    "core": (v_core, "core(I): formula (J:I)I, Monte Carlo intersection of random reductions, "
                     "three-way colon expressions (J^r:I^r)I, (J^r:I^r)J, J^(r+1):I^r, "
                     "or the complete-intersection oracle core(I^j) = I^(gj-g+1)",
             ("ideal", "reduction", "method", "j", "ell", "r_max", "seed", "stabilization", "min_samples")),
    "balanced": (v_balanced, "whether J:I is the same for random minimal reductions J (exit 1 if not)",
                 ("ideal", "samples", "ell", "r_max", "seed")),
    "gamma-estimate": (v_gamma_estimate, "upper estimate of the least number of minimal reductions whose "
                                         "intersection is the core", ("ideal", "core", "trials", "ell",
                                                                      "r_max", "seed")),
    "icl-member": (v_icl_member, "integral closure membership: f is integral over I iff I is a reduction "
                                 "of I + (f)", ("ideal", "poly", "k_max")),
    "check-example": (v_check_example, "run one worked-example fixture", ("name", "fixtures")),
    "check-all": (v_check_all, "run every fixture", ("fixtures",)),
    "list-fixtures": (v_list_fixtures, "list fixtures with descriptions", ("filter", "fixtures")),
}


def _add(p: argparse.ArgumentParser, opt: str):
    if opt == "ideal":
        p.add_argument("--ideal", help="comma-separated generators")
    elif opt == "ideal2":
        p.add_argument("--ideal2", help="second ideal, comma-separated generators")
    elif opt == "poly":
        p.add_argument("--poly", help="a polynomial")
    elif opt == "order":
        p.add_argument("--order", type=_order, default=GREVLEX, help="grevlex (default), lex or block:k")
    elif opt == "j":
        p.add_argument("--j", type=_positive, default=1, help="exponent (default 1)")
    elif opt == "unmixed":
        p.add_argument("--unmixed", action="store_true", help="assert I is unmixed (local height exact)")
    elif opt == "matrix":
        p.add_argument("--matrix", help="rows separated by ';', entries by ','")
    elif opt == "t":
        p.add_argument("--t", type=_positive, required=True, help="minor size")
    elif opt == "size":
        p.add_argument("--size", type=_nonneg, required=True, help="even Pfaffian size")
    elif opt == "s":
        p.add_argument("--s", type=_positive, required=True, help="the s in G_s")
    elif opt == "reduction":
        p.add_argument("--reduction", help="generators of a reduction J of I")
    elif opt == "r_max":
        p.add_argument("--r-max", type=_nonneg, default=DEFAULT_R_MAX, help="reduction number search cap")
    elif opt == "k_max":
        p.add_argument("--k-max", type=_nonneg, default=DEFAULT_K_MAX, help="integral closure search cap")
    elif opt == "seed":
        p.add_argument("--seed", type=_seed, default=0, help="random seed (default 0)")
    elif opt == "stabilization":
        p.add_argument("--stabilization", type=_positive, default=DEFAULT_STABILIZATION,
                       help="stop after this many non-shrinking samples")
    elif opt == "min_samples":
        p.add_argument("--min-samples", type=_positive, default=1, help="sample at least this many reductions")
    elif opt == "ell":
        p.add_argument("--ell", type=_positive, default=None, help="analytic spread if already known")
    elif opt == "method":
        p.add_argument("--method", choices=("formula", "montecarlo", "conjecture", "oracle"),
                       default="formula")
    elif opt == "samples":
        p.add_argument("--samples", type=_positive, default=4, help="number of random reductions")
    elif opt == "trials":
        p.add_argument("--trials", type=_positive, default=20, help="independent trials")
    elif opt == "core":
        p.add_argument("--core", dest="core_ideal", help="the core of I, known by other means")
    elif opt == "name":
        p.add_argument("name", help="fixture name")
    elif opt == "filter":
        p.add_argument("--filter", default="", help="substring filter on names")
    elif opt == "fixtures":
        p.add_argument("--fixtures", default=None,
                       help=f"fixture directory (default: ${corpus.ENV_VAR} or the bundled set)")
    else:
        raise AssertionError(opt)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="comma-separated variable names, e.g. \"x,y,z\" "
                        "(default: the names used in the input, in order of appearance)")
    common.add_argument("--field", type=_field, default=FieldSpec.prime(), help="QQ or GF:p (default GF:32003)")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    parser = argparse.ArgumentParser(prog="idealcore", description="Cores, reductions and ideal arithmetic.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")
    for verb, (_, text, opts) in VERBS.items():
        p = sub.add_parser(verb, parents=[common], help=text, description=text)
        for opt in opts:
            _add(p, opt)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Out(args.format)
    fn = VERBS[args.verb][0]
    try:
        return fn(args, out)
    except (ReductionCapError, GenericityFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, ArithmeticError, corpus.FixtureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
