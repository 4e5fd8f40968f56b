import json

import pytest

from steinergp import formulas, harness
from steinergp.harness import (
    BOUND,
    MATCH,
    MISMATCH,
    SKIPPED,
    SUITES,
    CaseSpec,
    SuiteConfig,
    UnknownSuite,
    join_corpus,
    run_suite,
)

SMALL = {
    "cycles": SuiteConfig(max_n=7),
    "trees": SuiteConfig(count=5),
    "joins": SuiteConfig(max_n=5),
    "corollary44": SuiteConfig(max_n=5),
    "sjc": SuiteConfig(max_n=6),
    "lexicographic": SuiteConfig(max_n=6, count=3),
    "split": SuiteConfig(count=4),
    "grid": SuiteConfig(k=2),
    "figure1": SuiteConfig(),
    "remark21": SuiteConfig(max_n=6),
    "prop22": SuiteConfig(max_n=6),
    "steiner-oracle": SuiteConfig(count=20),
    "monotonicity": SuiteConfig(max_n=6),
}


def test_every_suite_has_a_small_config():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_suites_run_and_serialize(name):
    report = run_suite(name, SMALL[name])
    assert report.cases
    assert all(c.verdict in (MATCH, BOUND, MISMATCH, SKIPPED) for c in report.cases)
    data = json.loads(report.to_json())
    assert data["summary"]["total"] == len(report.cases)
    assert report.to_text().splitlines()[-1].startswith(name)


@pytest.mark.parametrize("name", ["cycles", "figure1", "steiner-oracle", "split"])
def test_reports_are_deterministic(name):
    a = run_suite(name, SMALL[name]).to_json(include_timing=False)
    b = run_suite(name, SMALL[name]).to_json(include_timing=False)
    assert a == b
    assert "timing" not in json.loads(a)


def test_timing_lives_in_its_own_field():
    data = json.loads(run_suite("figure1").to_json())
    assert set(data["timing"]) == {"total_ms", "cases_ms"}
    assert all("ms" not in case for case in data["cases"])


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")


def _run_specs(monkeypatch, specs):
    monkeypatch.setitem(SUITES, "probe", lambda cfg: specs)
    return run_suite("probe")


def test_verdicts(monkeypatch):
    def truncated():
        raise harness.TruncatedSearch

    report = _run_specs(
        monkeypatch,
        [
            CaseSpec("eq", "t", lambda: 3, lambda: 3),
            CaseSpec("ne", "t", lambda: 3, lambda: 4),
            CaseSpec("le-strict", "t", lambda: 3, lambda: 4, "le"),
            CaseSpec("le-broken", "t", lambda: 5, lambda: 4, "le"),
            CaseSpec("budget", "t", lambda: 1, truncated),
        ],
    )
    assert [c.verdict for c in report.cases] == [MATCH, MISMATCH, BOUND, MISMATCH, SKIPPED]
    assert not report.passed
    assert report.summary == {MATCH: 1, BOUND: 1, MISMATCH: 2, SKIPPED: 1, "total": 5}


def test_join_corpus_shape():
    corpus = join_corpus()
    assert len(corpus) == 12
    assert all(g.n <= 5 for g in corpus.values())


def test_suites_exercise_every_closed_form(monkeypatch):
    public = [
        "tree_formula",
        "cycle_formula",
        "path_cycle_sjc_formula",
        "join_somega",
        "join_formula",
        "corollary_family_formula",
        "lex_lower_bound",
        "lex_gp_formula",
        "lex_cycle_complete_formula",
        "split_lower_bound",
        "grid_lower_bound_witness",
    ]
    called = set()
    for name in public:
        original = getattr(formulas, name)

        def wrapper(*args, _name=name, _f=original, **kwargs):
            called.add(_name)
            return _f(*args, **kwargs)

        monkeypatch.setattr(harness, name, wrapper, raising=False)
    for suite in SUITES:
        run_suite(suite, SMALL[suite])
    assert called == set(public)
