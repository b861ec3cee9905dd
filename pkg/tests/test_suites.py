import pytest

from diagram_spaces.core.config import SuiteConfig
from diagram_spaces.core.errors import ArityCapError, UnknownSuiteError
from diagram_spaces.suites import SUITES, SuiteRunner, get_suite, list_suites, run_suite

CATALOG = [
    'j-category-laws', 'j-permutative', 'sigma-inv-sigma', 'comma-components', 'day-convolution', 'flatness',
    'latching-cofibrations', 'hocolim-homology', 'graded-monoids', 'logification', 'freespec-functoriality',
    'appendix-filtrations', 'appendix-uk',
]


def test_catalog():
    assert [s['name'] for s in list_suites()] == CATALOG
    assert [s['name'] for s in list_suites('fincat')] == CATALOG[:4]
    assert {s['module'] for s in list_suites('operad')} == {'operadfilt'}
    assert list_suites('nothing') == []
    assert get_suite('flatness').defaults == {'max_degree': 4}


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError):
        get_suite('j-categroy-laws')
    with pytest.raises(KeyError):
        run_suite(SuiteConfig('nope'))


@pytest.mark.parametrize('name, max_degree', [
    ('j-category-laws', 2),
    ('j-permutative', 1),
    ('sigma-inv-sigma', 2),
    ('comma-components', 2),
])
def test_fincat_suites_pass_at_small_caps(corpus, name, max_degree):
    report = SuiteRunner(corpus).run(SuiteConfig(name, max_degree=max_degree))
    assert report.passed, [c.to_dict() for c in report.checks if not c.passed]
    assert report.config['max_degree'] == max_degree


def test_logification_suite(corpus):
    report = run_suite(SuiteConfig('logification'), corpus)
    assert report.passed, [c.name for c in report.checks if not c.passed]
    assert report.exit_status == 0
    assert any(c.name == 'trivial-logifications-reproduced' for c in report.checks)


def test_defaults_fill_unset_caps(corpus):
    report = run_suite(SuiteConfig('sigma-inv-sigma', max_degree=2, seed=5), corpus)
    assert report.config['seed'] == 5
    assert report.config['dim_cap'] is None
    assert report.suite == 'sigma-inv-sigma'


def test_filtration_suite_rejects_small_arity_cap(corpus):
    with pytest.raises(ArityCapError):
        run_suite(SuiteConfig('appendix-filtrations', arity_cap=1), corpus)


def test_invalid_caps_are_rejected(corpus):
    with pytest.raises(ValueError):
        run_suite(SuiteConfig('logification', max_degree=0), corpus)


def test_every_suite_has_a_runner():
    for spec in SUITES.values():
        assert callable(spec.runner)
        assert spec.to_dict()['module'] == spec.module


@pytest.mark.slow
@pytest.mark.parametrize('name', CATALOG)
def test_every_suite_passes_at_its_defaults(corpus, name):
    report = run_suite(SuiteConfig(name), corpus)
    assert report.passed, [c.to_dict() for c in report.checks if not c.passed]
    assert report.checks
    assert report.exit_status == 0


def test_day_convolution_suite_runs_the_adjunction(corpus):
    report = run_suite(SuiteConfig('day-convolution', max_degree=3), corpus)
    names = {c.name for c in report.checks}
    assert 'free-adjunction' in names
    assert 'day-convolution-levels[F_1,F_1]' in names
    assert report.passed, [c.to_dict() for c in report.checks if not c.passed]
