import shutil

import pytest

from idealcore import Ideal, PolyRing, maximal_ideal
from idealcore.corpus import (ENV_VAR, FixtureError, fixtures_dir, list_fixtures, load_fixture,
                              parse_fixture, parse_ideal_expr, run_fixture)

NAMES = [name for name, _ in list_fixtures()]


def test_listing_is_sorted_and_complete():
    assert NAMES == sorted(NAMES)
    assert {"pfaffian-3-9", "ci-powers-4-4", "maximal-ideal-powers-j2", "gorenstein-height3",
            "conjecture-5-2"} <= set(NAMES)
    assert list_fixtures("") == list_fixtures()
    assert [n for n, _ in list_fixtures("maximal")] == [n for n in NAMES if "maximal" in n]


@pytest.mark.parametrize("name", NAMES)
def test_fixture_round_trips(name):
    fx = load_fixture(name)
    again = parse_fixture(fx.dump())
    assert again == fx
    assert again.dump() == fx.dump()


@pytest.mark.parametrize("name", NAMES)
def test_every_expectation_is_cited(name):
    fx = load_fixture(name)
    fx.validate()
    assert fx.expect and all(e.citation for e in fx.expect)


@pytest.mark.parametrize("name", NAMES)
def test_fixture_passes(name):
    report = run_fixture(name)
    failed = [(c.label, c.expected, c.actual) for c in report.checks if not c.passed]
    assert report.passed, failed


def test_maximal_ideal_square_report():
    report = run_fixture("maximal-ideal-powers-j2")
    by_label = {c.label: c for c in report.checks}
    assert by_label["core-formula J"].passed
    assert by_label["reduction-number J"].actual == "1"
    assert by_label["analytic-spread"].actual == "2"
    assert by_label["gamma-estimate"].actual == "3"


def test_unknown_fixture():
    with pytest.raises(FixtureError, match="unknown fixture"):
        run_fixture("no-such-example")


def test_environment_override(tmp_path, monkeypatch):
    packaged = fixtures_dir()
    shutil.copy(packaged / "gs-hand-2x3.fixture", tmp_path)
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert [n for n, _ in list_fixtures()] == ["gs-hand-2x3"]
    assert run_fixture("gs-hand-2x3").passed
    # an explicit directory beats the environment
    assert [n for n, _ in list_fixtures(directory=packaged)] == NAMES


def test_missing_directory(tmp_path):
    with pytest.raises(FixtureError):
        list_fixtures(directory=tmp_path / "absent")


def test_failing_expectation_is_reported():
    fx = parse_fixture("name: t\nring: x, y\nideal: x^2, y^2\nexpect mu: 3 | two generators\n")
    report = run_fixture(fx)
    assert not report.passed
    assert report.checks[0].actual == "2"


@pytest.mark.parametrize("text, message", [
    ("ring: x\n", "no name"),
    ("name: a\nbogus: 1\n", "unknown key"),
    ("name: a\nexpect mu: 3\n", "citation"),
    ("name: a\nname: b\n", "duplicate"),
    ("name: a\njust text\n", "key: value"),
])
def test_parse_errors(text, message):
    with pytest.raises(FixtureError, match=message):
        parse_fixture(text)


def test_validate_rejects_unknown_quantity():
    fx = parse_fixture("name: a\nring: x\nideal: x\nexpect nonsense: 1 | c\n")
    with pytest.raises(FixtureError):
        fx.validate()


def test_ideal_expressions():
    R = PolyRing("x,y")
    m = maximal_ideal(R)
    assert parse_ideal_expr("m^3", R) == m ** 3
    assert parse_ideal_expr("x^2, y", R) == Ideal(R, "x^2, y")
    assert parse_ideal_expr("(x,y)^2 * (x) + (y^5)", R) == Ideal(R, "x^3, x^2*y, x*y^2, y^5")
    I = Ideal(R, "x^2, y^2")
    assert parse_ideal_expr("m*I", R, {"I": I}) == m * I
    with pytest.raises(ValueError):
        parse_ideal_expr("(x, y", R)
