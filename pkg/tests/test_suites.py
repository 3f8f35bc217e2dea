import json
import os
import pandas as pd
import pytest
from easyqrand.checks import CheckRecord
from easyqrand.codecs import QuantumTestCodec, StateCodec
from easyqrand.constants import Discipline, Suite
from easyqrand.qsigma import QuantumTest, cylinder_prefix
from easyqrand.states.prefix import make_classical, make_tau
from easyqrand.suites import (AVAILABLE_SUITES, RunConfig, SuiteReport, run_suite,
                              discipline_verdicts, eval_state_against_test)
from easyqrand.suites.base import BaseSuite
from easyqrand.suites.config import read_config_file


@pytest.fixture
def approx_config(tmp_path):
    return RunConfig(suite='approx', seed=42, n_max=4, instance_count=1,
                     output_dir=str(tmp_path / 'reports'))


@pytest.fixture
def stored_test(tmp_path):
    test = QuantumTest(Discipline.QMLT, [cylinder_prefix('0', 3), cylinder_prefix('00', 3)])
    path = str(tmp_path / 'test.json')
    QuantumTestCodec().dump(test, path)
    return path


def store_state(tmp_path, state, name='state.json'):
    path = str(tmp_path / name)
    StateCodec().dump(state, path)
    return path


def test_config_defaults():
    cfg = RunConfig()
    assert(cfg.seed == 0)
    assert(cfg.n_max == 6)
    assert(cfg.suite == Suite.ALL)
    assert(cfg.instance_count == 1)
    assert(cfg.delta == 0.5)
    assert(cfg.format == 'both')
    assert(not cfg.artifacts)
    assert(cfg.tols.check == 1e-7)


def test_config_exceptions():
    with pytest.raises(RuntimeError):
        RunConfig(instance_count=0)
    with pytest.raises(RuntimeError):
        RunConfig(delta=0.0)
    with pytest.raises(RuntimeError):
        RunConfig(delta=1.0)
    with pytest.raises(RuntimeError):
        RunConfig(suite='approx', n_max=13)
    with pytest.raises(RuntimeError):
        RunConfig(n_max=1)
    with pytest.raises(RuntimeError):
        RunConfig(tolerances={'slack': 0.1})
    with pytest.raises(RuntimeError):
        RunConfig(suite='everything')
    with pytest.raises(RuntimeError):
        RunConfig(colour='blue')


@pytest.mark.parametrize('suite', ['measures', 'lln'])
def test_config_diagonal_cap(suite):
    assert(RunConfig(suite=suite, n_max=24).n_max == 24)


def test_config_file(tmp_path):
    path = tmp_path / 'run.json'
    with open(path, 'w') as fd:
        json.dump({'suite': 'lln', 'seed': 3, 'tolerances': {'check': 1e-6}}, fd)
    cfg = RunConfig.from_file(str(path), seed=None, n_max=5)
    assert(cfg.suite == Suite.LLN)
    assert(cfg.seed == 3)
    assert(cfg.n_max == 5)
    assert(cfg.tols.check == 1e-6)
    copy = cfg.with_suite('approx')
    assert(copy.suite == Suite.APPROX)
    assert(copy.to_dict()['tolerances'] == {'check': 1e-6})


def test_read_config_file_exceptions(tmp_path):
    with pytest.raises(RuntimeError):
        read_config_file(str(tmp_path / 'missing.json'))
    path = tmp_path / 'broken.json'
    with open(path, 'w') as fd:
        fd.write('{"seed": ')
    with pytest.raises(RuntimeError):
        read_config_file(str(path))
    with open(path, 'w') as fd:
        fd.write('[1, 2]')
    with pytest.raises(RuntimeError):
        read_config_file(str(path))


def test_suite_report(tmp_path):
    records = [CheckRecord('b <= 1', 0.5, '<=', 1.0, instance_id='b-0000'),
               CheckRecord('a < 1', 2.0, '<', 1.0, instance_id='a-0000')]
    report = SuiteReport('approx', records, 7, wall_time=1.5)
    assert([record.instance_id for record in report.records] == ['a-0000', 'b-0000'])
    assert(report.summary() == {'total': 2, 'passed': 1, 'failed': 1})
    assert(not report.ok)
    assert(report.failures()[0].inequality == 'a < 1')
    paths = report.write(str(tmp_path))
    assert([os.path.basename(path) for path in paths] == ['approx_report.json',
                                                          'approx_report.csv'])
    with open(paths[0]) as fd:
        data = json.load(fd)
    assert(data['seed'] == 7)
    assert(data['summary']['failed'] == 1)
    assert('wall_time' not in data)
    frame = pd.read_csv(paths[1])
    assert(list(frame.columns) == ['instance_id', 'inequality', 'lhs', 'relation', 'rhs',
                                   'margin', 'pass'])
    assert(list(frame['margin']) == [-1.0, 0.5])
    with open(tmp_path / 'approx_timing.json') as fd:
        assert(json.load(fd)['wall_time'] == 1.5)


def test_suite_report_csv_only(tmp_path):
    report = SuiteReport('lln', [], 0)
    assert(report.ok)
    paths = report.write(str(tmp_path), 'csv')
    assert([os.path.basename(path) for path in paths] == ['lln_report.csv'])
    assert(not os.path.exists(tmp_path / 'lln_timing.json'))


def test_available_suites():
    for name in ['approx', 'convert', 'measures', 'lln']:
        assert(name in AVAILABLE_SUITES)


def test_run_approx(approx_config):
    report = run_suite(approx_config)
    assert(report.suite == 'approx')
    assert(report.total > 0)
    assert(report.ok)
    assert(all(record.instance_id.startswith('approx_instance-') for record in report.records))
    assert(os.path.exists(os.path.join(approx_config.output_dir, 'approx_report.json')))


def test_run_is_deterministic(tmp_path):
    contents = []
    for name in ['first', 'second']:
        cfg = RunConfig(suite='approx', seed=42, n_max=4, instance_count=1,
                        output_dir=str(tmp_path / name))
        run_suite(cfg)
        files = []
        for report_file in ['approx_report.json', 'approx_report.csv']:
            with open(os.path.join(cfg.output_dir, report_file), 'rb') as fd:
                files.append(fd.read())
        contents.append(files)
    assert(contents[0] == contents[1])


def test_run_with_artifacts(tmp_path):
    cfg = RunConfig(suite='approx', seed=1, n_max=3, instance_count=1, artifacts=True,
                    output_dir=str(tmp_path), format='json')
    report = run_suite(cfg)
    assert(report.ok)
    assert(os.path.exists(tmp_path / 'artifacts' / 'approx_instance-0000_eigen_log.csv'))
    assert(not os.path.exists(tmp_path / 'approx_report.csv'))


def test_run_without_writing(tmp_path):
    cfg = RunConfig(suite='approx', seed=5, n_max=3, output_dir=str(tmp_path / 'unused'))
    run_suite(cfg, write=False)
    assert(not os.path.exists(tmp_path / 'unused'))


def test_discipline_verdicts():
    assert(discipline_verdicts([0.6, 0.7], 0.5, Discipline.QMLT, 2) ==
           {'qMLT': True, 'qSolovay': True})
    assert(discipline_verdicts([0.6, 0.4], 0.5, Discipline.QSOLOVAY, 2) ==
           {'qMLT': False, 'qSolovay': False})
    assert(discipline_verdicts([], 0.5, Discipline.QMLT, 1) ==
           {'qMLT': False, 'qSolovay': False})
    assert(discipline_verdicts([0.9], 0.5, Discipline.PSCHNORR, 1) == {'pSchnorr': True})


def test_eval_state_against_test(tmp_path, stored_test):
    state_file = store_state(tmp_path, make_classical('000', 3))
    result = eval_state_against_test(state_file, stored_test, 0.5, count=2)
    assert(result['discipline'] == 'qMLT')
    assert(result['values'] == pytest.approx([1.0, 1.0]))
    assert(result['fails'])
    assert(result['verdicts'] == {'qMLT': True, 'qSolovay': True})
    json.dumps(result)
    tau_file = store_state(tmp_path, make_tau(3), 'tau.json')
    result = eval_state_against_test(tau_file, stored_test, 0.5)
    assert(not result['fails'])
    assert(result['inf'] == pytest.approx(0.25))


def test_eval_shallow_state(tmp_path, stored_test):
    state_file = store_state(tmp_path, make_classical('00', 2))
    with pytest.raises(RuntimeError):
        eval_state_against_test(state_file, stored_test, 0.5)


@pytest.mark.parametrize('suite', ['convert', 'measures', 'lln'])
def test_run_other_suites(tmp_path, suite):
    cfg = RunConfig(suite=suite, seed=3, n_max=4, instance_count=1, output_dir=str(tmp_path))
    report = run_suite(cfg, write=False)
    assert(report.suite == suite)
    assert(report.total > 0)
    assert(report.ok)


def test_threaded_run_matches_synchronous(tmp_path):
    reports = [run_suite(RunConfig(suite='approx', seed=8, n_max=3, instance_count=2,
                                   workers=workers, output_dir=str(tmp_path)), write=False)
               for workers in [1, 2]]
    assert(reports[0].to_json() == reports[1].to_json())


def test_convert_and_lln_records(tmp_path):
    convert = run_suite(RunConfig(suite='convert', seed=3, n_max=4, output_dir=str(tmp_path)),
                        write=False)
    assert('sum_k tau(S^k) < 1' in {record.inequality for record in convert.records})
    lln = run_suite(RunConfig(suite='lln', seed=3, n_max=4, output_dir=str(tmp_path)),
                    write=False)
    labels = {record.inequality for record in lln.records}
    assert('sum_n b_p(S_n) <= declared limit' in labels)
    assert('|lln_average(b_p, 3, -1.0, 2.0) - M|' in labels)
    assert('|lln_average(tau, 1, 0.0, 1.0) - M|' in labels)


def test_suite_element_roundtrip(approx_config):
    suite = BaseSuite.lookup('approx')(approx_config.with_suite('approx'))
    restored = BaseSuite.deserialize(suite.serialize())
    assert(type(restored) is type(suite))
    assert(restored.cfg.to_dict() == suite.cfg.to_dict())
    assert(json.loads(suite.serialize())['element_category'] == 'suite')


def test_suite_element_exceptions():
    with pytest.raises(RuntimeError):
        BaseSuite.lookup('everything')
    with pytest.raises(RuntimeError):
        BaseSuite.deserialize('{"element_name": "approx"')
    with pytest.raises(RuntimeError):
        BaseSuite.deserialize('{"state": {}}')
    with pytest.raises(RuntimeError):
        BaseSuite.deserialize(json.dumps({'element_name': 'approx',
                                          'element_category': 'sampling', 'state': {}}))


def test_config_file_merges_tolerances(tmp_path):
    path = tmp_path / 'run.json'
    with open(path, 'w') as fd:
        json.dump({'suite': 'approx', 'tolerances': {'check': 1e-6}}, fd)
    cfg = RunConfig.from_file(str(path), tolerances={'mass': 1e-8})
    assert(cfg.tolerances == {'check': 1e-6, 'mass': 1e-8})
    assert(cfg.tols.check == 1e-6)
    assert(cfg.tols.mass == 1e-8)
    assert(cfg.tols.herm == 1e-9)
