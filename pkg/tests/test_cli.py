import json
import logging
import os

import pytest

import check
from config.config import Mode, RunConfig
from interlace_checker import tester
from interlace_checker.generator import dump_json, load_instance
from interlace_checker.helpers.common import get_status_str
from interlace_checker.results import (
    EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATION, ResultsManager, strip_timing,
)


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def write_json(path, data):
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


def read_report(path):
    with open(path, encoding='utf-8') as fs:
        return json.load(fs)


def run_config(*argv, config_json=None):
    return RunConfig(cli_args=check.build_parser().parse_args(list(argv)), config_json=config_json)


@pytest.fixture
def pauli_file(tmp_path):
    return write_json(tmp_path / 'pauli.json', {'n': 2, 'entries': [[['0', '0'], ['1', '0']], [['1', '0'], ['0', '0']]]})


@pytest.fixture
def pair_file(tmp_path):
    # f = x^2 - 2x, g = x - 3
    return write_json(tmp_path / 'pair.json', {'f': ['0', '-2', '1'], 'g': ['-3', '1']})


def test_config_defaults():
    config = run_config('check')
    assert config.seed == 0
    assert config.trials == 20
    assert (config.size_min, config.size_max) == (2, 6)
    assert config.entry_bound == 10
    assert config.alpha_count == 64
    assert config.mode == Mode.ALL
    assert config.out_path == './results.json'
    assert run_config('gen').out_path == './instances'


def test_config_priority():
    config_json = {'trials': 3, 'entry_bound': 4, 'width': '1/8'}
    config = run_config('check', '--trials', '5', config_json=config_json)
    assert config.trials == 5
    assert config.entry_bound == 4
    assert str(config.width) == '1/8'
    assert 'jobs' not in config.to_dict()


@pytest.mark.parametrize('argv', [
    ['gen', '--bound', '0'],
    ['check', '--trials', '0'],
    ['check', '--seed', '-1'],
    ['check', '--seed', str(2 ** 64)],
    ['check', '--size-min', '4', '--size-max', '3'],
    ['check', '--mode', 'cauchy', '--size-min', '1'],
    ['check', '--width', '0'],
    ['check', '--width', 'narrow'],
    ['check', '--jobs', '0'],
    ['check', '--alphas', '0'],
])
def test_invalid_config_exits_2(argv):
    assert check.main(argv) == EXIT_INPUT_ERROR


def test_size_min_one_allowed_for_pair_modes(tmp_path):
    out = str(tmp_path / 'r.json')
    argv = ['check', '--mode', 'definition', '--size-min', '1', '--size-max', '2', '--trials', '3', '--out', out]
    assert check.main(argv) == EXIT_OK


def test_missing_explicit_config_exits_2(tmp_path):
    assert check.main(['check', '-c', str(tmp_path / 'absent.json')]) == EXIT_INPUT_ERROR


def test_default_config_file_is_read(tmp_path):
    write_json(tmp_path / 'config.json', {'trials': 2, 'mode': 'definition', 'out_path': str(tmp_path / 'r.json')})
    assert check.main(['check']) == EXIT_OK
    assert read_report(tmp_path / 'r.json')['summary']['total'] == 2


def test_gen_writes_deterministic_files(tmp_path):
    first, second = tmp_path / 'a', tmp_path / 'b'
    for out in (first, second):
        assert check.main(['gen', '--seed', '17', '--trials', '4', '--size-max', '4', '--out', str(out)]) == EXIT_OK

    names = sorted(os.listdir(first))
    assert names == ['matrix_0000.json', 'matrix_0001.json', 'matrix_0002.json', 'matrix_0003.json']
    for name in names:
        assert (first / name).read_text(encoding='utf-8') == (second / name).read_text(encoding='utf-8')
        kind, data = load_instance(str(first / name))
        assert kind == 'matrix'
        assert 2 <= data['n'] <= 4


def test_check_reproduces_generated_matrices(tmp_path):
    instances = tmp_path / 'instances'
    assert check.main(['gen', '--seed', '3', '--trials', '3', '--size-max', '4', '--out', str(instances)]) == EXIT_OK

    generated, from_files = tmp_path / 'gen.json', tmp_path / 'files.json'
    common = ['--seed', '3', '--trials', '3', '--size-max', '4', '--mode', 'cauchy']
    assert check.main(['check', *common, '--out', str(generated)]) == EXIT_OK
    paths = sorted(str(instances / name) for name in os.listdir(instances))
    assert check.main(['check', *common, '--out', str(from_files), *paths]) == EXIT_OK

    matrices = [trial['details']['matrix'] for trial in read_report(generated)['trials']]
    assert matrices == [trial['details']['matrix'] for trial in read_report(from_files)['trials']]


def test_cauchy_on_matrix_file(tmp_path, pauli_file):
    out = tmp_path / 'r.json'
    assert check.main(['check', '--mode', 'cauchy', '--out', str(out), pauli_file]) == EXIT_OK

    trial = read_report(out)['trials'][0]
    assert trial['result'] == 'OK'
    assert trial['source'] == pauli_file
    assert [d['verdict'] for d in trial['details']['deletions']] == ['Interlaces', 'Interlaces']


def test_pencil_on_pair_file_records_witness(tmp_path, pair_file):
    out = tmp_path / 'r.json'
    assert check.main(['check', '--mode', 'pencil', '--out', str(out), pair_file]) == EXIT_OK

    crosscheck = read_report(out)['trials'][0]['details']['crosscheck']
    assert crosscheck['consistency'] == 'Consistent'
    assert crosscheck['interlace']['verdict'] == 'DoesNotInterlace'
    assert crosscheck['pencil']['witness'] == '-1'


def test_all_mode_dispatches_by_file_kind(tmp_path, pair_file, pauli_file):
    out = tmp_path / 'r.json'
    assert check.main(['check', '--out', str(out), pair_file, pauli_file]) == EXIT_OK

    report = read_report(out)
    assert [(t['mode'], t['source']) for t in report['trials']] == [
        ('definition', pair_file), ('pencil', pair_file), ('identity', pauli_file), ('cauchy', pauli_file),
    ]


def test_wrong_file_kind_exits_2(pauli_file):
    assert check.main(['check', '--mode', 'definition', pauli_file]) == EXIT_INPUT_ERROR


@pytest.mark.parametrize('data, field', [
    ({'n': 2, 'entries': [[['1', '0'], ['0', '1']], [['0', '1'], ['1', '0']]]}, 'entries[0][1]'),
    ({'f': ['1', 'x'], 'g': ['1']}, 'f[1]'),
])
def test_malformed_file_names_file_and_field(tmp_path, caplog, data, field):
    path = write_json(tmp_path / 'bad.json', data)
    with caplog.at_level(logging.ERROR):
        assert check.main(['check', path]) == EXIT_INPUT_ERROR
    assert path in caplog.text
    assert field in caplog.text


def test_unreadable_json_exits_2(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"n": 2,', encoding='utf-8')
    assert check.main(['check', str(path)]) == EXIT_INPUT_ERROR


def test_non_utf8_input_exits_2(tmp_path, caplog):
    path = tmp_path / 'latin.json'
    path.write_bytes(b'{"f": ["\xff"], "g": ["1"]}')
    with caplog.at_level(logging.ERROR):
        assert check.main(['check', '--mode', 'pencil', str(path)]) == EXIT_INPUT_ERROR
    assert str(path) in caplog.text


@pytest.mark.parametrize('content', [b'[1, 2]', b'"trials"', b'{"trials": \xff}', b'{"inputs": "a.json"}', b'{"out_path": 5}'])
def test_bad_config_file_exits_2(tmp_path, content):
    path = tmp_path / 'c.json'
    path.write_bytes(content)
    assert check.main(['check', '-c', str(path)]) == EXIT_INPUT_ERROR


@pytest.mark.parametrize('mode', ['pencil', 'all'])
@pytest.mark.parametrize('data', [
    {'f': ['-1', '0', '1'], 'g': ['0', '0', '1']},
    {'f': ['-1', '0', '1'], 'g': ['1']},
    {'f': ['-1', '1'], 'g': ['0']},
])
def test_pair_breaking_pencil_degrees_exits_2(tmp_path, caplog, mode, data):
    path = write_json(tmp_path / 'pair.json', data)
    with caplog.at_level(logging.ERROR):
        assert check.main(['check', '--mode', mode, path]) == EXIT_INPUT_ERROR
    assert path in caplog.text
    assert 'field g' in caplog.text


def test_zero_polynomial_pair_exits_2(tmp_path):
    path = write_json(tmp_path / 'pair.json', {'f': ['0'], 'g': ['1']})
    assert check.main(['check', '--mode', 'definition', path]) == EXIT_INPUT_ERROR


def test_definition_keeps_degree_mismatch_as_verdict(tmp_path):
    path = write_json(tmp_path / 'pair.json', {'f': ['-1', '0', '1'], 'g': ['0', '0', '1']})
    out = tmp_path / 'r.json'
    check.main(['check', '--mode', 'definition', '--out', str(out), path])
    assert read_report(out)['trials'][0]['details']['interlace']['verdict'] == 'DegreeMismatch'


def test_missing_input_file_exits_2(tmp_path):
    assert check.main(['check', str(tmp_path / 'absent.json')]) == EXIT_INPUT_ERROR


def test_small_matrix_input_rejected(tmp_path):
    path = write_json(tmp_path / 'one.json', {'n': 1, 'entries': [[['2', '0']]]})
    assert check.main(['check', '--mode', 'cauchy', path]) == EXIT_INPUT_ERROR


def test_failed_trial_exits_1(tmp_path, monkeypatch):
    monkeypatch.setitem(tester.TRIAL_CHECKS, Mode.DEFINITION, lambda task: (False, {}))
    out = tmp_path / 'r.json'
    assert check.main(['check', '--mode', 'definition', '--trials', '2', '--out', str(out)]) == EXIT_VIOLATION
    assert read_report(out)['summary']['failed'] == 2


def test_crashing_trial_is_an_error(tmp_path, monkeypatch):
    def crash(task):
        raise RuntimeError('boom')

    monkeypatch.setitem(tester.TRIAL_CHECKS, Mode.DEFINITION, crash)
    out = tmp_path / 'r.json'
    assert check.main(['check', '--mode', 'definition', '--trials', '1', '--out', str(out)]) == EXIT_VIOLATION
    trial = read_report(out)['trials'][0]
    assert trial['result'] == 'ERROR'
    assert 'RuntimeError: boom' in trial['details']['error']


def test_report_layout(tmp_path):
    out = tmp_path / 'r.json'
    assert check.main(['check', '--mode', 'identity', '--trials', '3', '--size-max', '3', '--out', str(out)]) == EXIT_OK

    report = read_report(out)
    assert report['summary'] == {'total': 3, 'passed': 3, 'failed': 0, 'errors': 0, 'canceled': 0}
    assert report['config']['mode'] == 'identity'
    assert 'version' in report
    for trial in report['trials']:
        assert trial['details']['identity']['exact_match']
        assert 'elapsed' in trial


def test_same_seed_same_report(tmp_path):
    reports = []
    for name in ('a.json', 'b.json'):
        out = tmp_path / name
        argv = ['check', '--seed', '99', '--trials', '2', '--size-max', '3', '--alphas', '8', '--out', str(out)]
        assert check.main(argv) == EXIT_OK
        reports.append(strip_timing(read_report(out)))
    assert reports[0] == reports[1]


def test_jobs_do_not_change_report(tmp_path):
    reports = []
    for jobs in ('1', '2'):
        out = tmp_path / f'r{jobs}.json'
        argv = ['check', '--seed', '5', '--trials', '3', '--size-max', '3', '--alphas', '4', '--jobs', jobs, '--out', str(out)]
        assert check.main(argv) == EXIT_OK
        reports.append(strip_timing(read_report(out)))
    assert reports[0] == reports[1]


def test_strip_timing():
    report = {'elapsed': 1.5, 'trials': [{'elapsed': 0.1, 'result': 'OK'}], 'summary': {'total': 1}}
    assert strip_timing(report) == {'trials': [{'result': 'OK'}], 'summary': {'total': 1}}


def test_empty_report_is_not_ok():
    assert not ResultsManager.is_results_ok({'summary': {'total': 0}, 'trials': []})


def test_status_line():
    assert get_status_str('cauchy', 3, 0.123, 'OK') == 'Mode: cauchy. Trial: 3. Elapsed time: 0.12 sec. OK'


def test_dump_json_is_stable():
    assert dump_json({'b': 1, 'a': [1]}) == '{\n    "a": [\n        1\n    ],\n    "b": 1\n}\n'
