import pytest

from diagram_spaces.core.config import DEFAULT_FIXTURES_DIR, SuiteConfig


def test_environment_fills_unset_fields():
    config = SuiteConfig.from_env(SuiteConfig('flatness'), {'DSPACE_MAX_DEGREE': '3', 'DSPACE_FORMAT': 'json'})
    assert config.max_degree == 3
    assert config.output_format == 'json'


def test_flags_win_over_environment():
    base = SuiteConfig('flatness', max_degree=2)
    config = SuiteConfig.from_env(base, {'DSPACE_MAX_DEGREE': '4', 'DSPACE_SEED': '9'}, explicit={'max_degree'})
    assert config.max_degree == 2
    assert config.seed == 9


def test_bad_environment_value():
    with pytest.raises(ValueError):
        SuiteConfig.from_env(SuiteConfig('flatness'), {'DSPACE_ARITY_CAP': 'many'})


def test_suite_defaults_fill_the_rest():
    config = SuiteConfig('hocolim-homology', max_degree=2).with_defaults({'max_degree': 4, 'dim_cap': 3})
    assert config.max_degree == 2
    assert config.dim_cap == 3


@pytest.mark.parametrize('changes', [{'max_degree': 0}, {'arity_cap': -1}, {'output_format': 'yaml'}])
def test_validation(changes):
    with pytest.raises(ValueError):
        SuiteConfig('flatness', **changes).validate()


def test_paths_and_report_fields():
    assert SuiteConfig('flatness').fixtures_path == DEFAULT_FIXTURES_DIR
    assert str(SuiteConfig('flatness', fixtures_dir='/tmp/corpus').fixtures_path) == '/tmp/corpus'
    fields = SuiteConfig('flatness', out_path='report.json').report_fields()
    assert 'out_path' not in fields and 'use_color' not in fields
    assert fields['suite'] == 'flatness'
