import json

from diagram_spaces.core.fincat import MorI, ObjJ
from diagram_spaces.core.models import CheckResult, SuiteReport, TRUNCATION_LABEL, jsonable


def test_fail_records_witness():
    check = CheckResult('demo', True)
    check.fail({'k': 1})
    assert not check.passed
    assert check.witnesses == [{'k': 1}]


def test_combine():
    ok = CheckResult('ok', True)
    bad = CheckResult('bad', False, witnesses=['w'])
    combined = CheckResult.combine('both', [ok, bad])
    assert not combined.passed
    assert combined.details == {'ok': True, 'bad': False}
    assert combined.witnesses == [{'check': 'bad', 'witness': 'w'}]
    assert CheckResult.combine('none', []).passed


def test_jsonable_handles_library_values():
    value = jsonable({ObjJ(1, 0): {2, 1}, 'mor': MorI(2, (2, 1)), 'pair': (1, None)})
    assert value['pair'] == [1, None]
    assert [1, 2] in value.values()
    json.dumps(value)


def test_report_json_is_deterministic():
    report = SuiteReport('demo', {'max_degree': 2, 'suite': 'demo'})
    report.add(CheckResult('first', True, details={'b': 1, 'a': 2}))
    report.add(CheckResult('second', False, witnesses=[{'object': '2'}]))
    assert report.exit_status == 1
    text = report.to_json()
    assert text == report.to_json()
    data = json.loads(text)
    assert data['label'] == TRUNCATION_LABEL
    assert data['passed'] is False
    assert [c['name'] for c in data['checks']] == ['first', 'second']


def test_empty_report_passes():
    assert SuiteReport('demo', {}).exit_status == 0
