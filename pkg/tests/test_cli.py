import json
import os
import subprocess
import sys

import pytest

from diagram_spaces.cli import build_parser, config_from_args, main


def run_cli(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    return exc.value.code


def test_no_command_prints_help(capsys):
    assert run_cli([]) == 0
    assert 'dspace' in capsys.readouterr().out


def test_list_json(capsys):
    assert run_cli(['list', '--format', 'json']) == 0
    suites = json.loads(capsys.readouterr().out)
    assert len(suites) == 13
    assert suites[0]['name'] == 'j-category-laws'


def test_list_text_by_module(capsys):
    assert run_cli(['list', '--module', 'graded', '--no-color']) == 0
    out = capsys.readouterr().out
    assert 'logification' in out
    assert 'flatness' not in out


def test_unknown_suite_is_a_usage_error(capsys):
    assert run_cli(['run', '--suite', 'nope', '--no-color']) == 2
    err = capsys.readouterr().err
    assert 'usage:' in err
    assert 'nope' in err


def test_cap_errors_exit_with_one(capsys):
    assert run_cli(['run', '--suite', 'appendix-filtrations', '--arity-cap', '1', '--no-color']) == 1
    assert 'arity_cap=1' in capsys.readouterr().err


def test_invalid_flag_value(capsys):
    assert run_cli(['run', '--suite', 'flatness', '--max-degree', '0', '--no-color']) == 1
    assert 'max_degree' in capsys.readouterr().err


def test_run_writes_json_report(tmp_path, capsys):
    out = tmp_path / 'reports' / 'logification.json'
    assert run_cli(['run', '--suite', 'logification', '--format', 'json', '--out', str(out)]) == 0
    printed = json.loads(capsys.readouterr().out)
    written = json.loads(out.read_text(encoding='utf-8'))
    assert printed == written
    assert written['suite'] == 'logification'
    assert written['passed'] is True


def test_run_text_output(capsys):
    assert run_cli(['run', '--suite', 'j-category-laws', '--max-degree', '2', '--no-color']) == 0
    assert 'checks passed' in capsys.readouterr().out


def test_homology_command(capsys):
    assert run_cli(['homology', '--cat', 'I', '--max-degree', '2', '--format', 'json']) == 0
    groups = json.loads(capsys.readouterr().out)
    assert groups['0']['rank'] == 1
    assert groups['1']['rank'] == 0


def test_validate_command(capsys):
    assert run_cli(['validate', '--no-color']) == 0
    assert '✓ spans' in capsys.readouterr().out


def test_validate_missing_corpus(tmp_path, capsys):
    assert run_cli(['validate', '--fixtures', str(tmp_path), '--no-color']) == 1


def test_flag_and_environment_precedence():
    parser = build_parser()
    environ = {'DSPACE_MAX_DEGREE': '2', 'DSPACE_SEED': '4'}
    config = config_from_args(parser.parse_args(['run', '--suite', 'flatness']), environ)
    assert config.max_degree == 2
    assert config.seed == 4
    config = config_from_args(parser.parse_args(['run', '--suite', 'flatness', '--max-degree', '3']), environ)
    assert config.max_degree == 3


def test_environment_is_read_by_run(monkeypatch, capsys):
    monkeypatch.setenv('DSPACE_MAX_DEGREE', '0')
    assert run_cli(['run', '--suite', 'j-category-laws', '--no-color']) == 1


@pytest.mark.slow
@pytest.mark.parametrize('suite', ['day-convolution', 'appendix-uk'])
def test_reports_do_not_depend_on_hash_seed(suite):
    outputs = []
    for seed in ('1', '7'):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        completed = subprocess.run(
            [sys.executable, '-m', 'diagram_spaces.cli', 'run', '--suite', suite, '--format', 'json'],
            capture_output=True, env=env, check=False,
        )
        assert completed.returncode == 0, completed.stderr
        outputs.append(completed.stdout)
    assert outputs[0] == outputs[1]
